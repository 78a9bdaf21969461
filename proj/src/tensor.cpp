#include "mplsym/tensor.hpp"

#include <functional>
#include <optional>
#include <sstream>

namespace mplsym {

Symbol Symbol::unit() {
    Symbol s(0);
    s.terms_.emplace(Word{}, Rational(1));
    return s;
}

Symbol Symbol::letter(int i, const Rational& c) { return word({i}, c); }

Symbol Symbol::word(const Word& w, const Rational& c) {
    Symbol s(int(w.size()));
    s.add(w, c);
    return s;
}

Rational Symbol::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Symbol::add(const Word& w, const Rational& c) {
    if (int(w.size()) != weight_) {
        if (terms_.empty())
            weight_ = int(w.size());
        else
            throw WeightMismatch("word of length " + std::to_string(w.size()) +
                                 " added to weight " + std::to_string(weight_));
    }
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Symbol::check_weight(const Symbol& o) const {
    if (weight_ != o.weight_ && !terms_.empty() && !o.terms_.empty())
        throw WeightMismatch("weights " + std::to_string(weight_) + " and " +
                             std::to_string(o.weight_));
}

Symbol& Symbol::operator+=(const Symbol& o) {
    check_weight(o);
    if (terms_.empty()) weight_ = o.weight_;
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
    check_weight(o);
    if (terms_.empty()) weight_ = o.weight_;
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

Symbol& Symbol::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_) v *= c;
    return *this;
}

bool operator==(const Symbol& a, const Symbol& b) { return a.terms_ == b.terms_; }

Symbol Symbol::tensor(const Symbol& o) const {
    Symbol s(weight_ + o.weight_);
    for (const auto& [u, a] : terms_)
        for (const auto& [v, b] : o.terms_) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            s.add(w, a * b);
        }
    return s;
}

Symbol Symbol::relabel(const std::vector<int>& map) const {
    Symbol s(weight_);
    for (const auto& [u, c] : terms_) {
        Word w = u;
        for (int& l : w) l = map.at(l);
        s.add(w, c);
    }
    return s;
}

std::string Symbol::to_string(const Alphabet& A) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        Rational a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (a != 1) os << a.get_str() << " ";
        os << "[";
        for (size_t i = 0; i < w.size(); ++i) os << (i ? " | " : "") << A.name(w[i]);
        os << "]";
    }
    return os.str();
}

std::vector<Word> shuffle_words(const Word& a, const Word& b) {
    std::vector<Word> out;
    size_t n = a.size() + b.size();
    Word cur;
    cur.reserve(n);
    std::function<void(size_t, size_t)> rec = [&](size_t i, size_t j) {
        if (i == a.size() && j == b.size()) {
            out.push_back(cur);
            return;
        }
        if (i < a.size()) {
            cur.push_back(a[i]);
            rec(i + 1, j);
            cur.pop_back();
        }
        if (j < b.size()) {
            cur.push_back(b[j]);
            rec(i, j + 1);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

Symbol shuffle(const Symbol& a, const Symbol& b) {
    Symbol s(a.weight() + b.weight());
    for (const auto& [u, x] : a.terms())
        for (const auto& [v, y] : b.terms()) {
            Rational c = x * y;
            for (const Word& w : shuffle_words(u, v)) s.add(w, c);
        }
    return s;
}

Symbol expand_factor(const RatFunc& f, const Alphabet& A) {
    Symbol s(1);
    for (const auto& [i, e] : decompose(f, A)) s.add({i}, e);
    return s;
}

Symbol parse_symbol(const std::string& text, Alphabet& A, bool extend) {
    std::optional<Symbol> out;
    size_t pos = 0;
    auto trim = [](std::string t) {
        size_t a = t.find_first_not_of(" \t\n"), b = t.find_last_not_of(" \t\n");
        return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
    };
    if (trim(text) == "0") return Symbol(0);
    while (true) {
        size_t open = text.find('[', pos);
        if (open == std::string::npos) {
            if (!trim(text.substr(pos)).empty()) throw ParseError("trailing text in symbol: " + text.substr(pos));
            break;
        }
        std::string pre = trim(text.substr(pos, open - pos));
        Rational c = 1;
        if (!pre.empty() && (pre[0] == '+' || pre[0] == '-')) {
            if (pre[0] == '-') c = -1;
            pre = trim(pre.substr(1));
        } else if (out) {
            throw ParseError("missing sign between symbol terms");
        }
        if (!pre.empty() && pre.back() == '*') pre = trim(pre.substr(0, pre.size() - 1));
        if (!pre.empty()) c *= parse_rational(pre);
        size_t close = text.find(']', open);
        if (close == std::string::npos) throw ParseError("unterminated '[' in symbol");
        std::string body = text.substr(open + 1, close - open - 1);
        std::vector<std::string> slots;
        std::stringstream ss(body);
        std::string slot;
        while (std::getline(ss, slot, '|')) slots.push_back(trim(slot));
        Symbol term = Symbol::unit() * c;
        for (const std::string& t : slots) {
            if (t.empty()) throw ParseError("empty symbol entry");
            RatFunc f = parse_ratfunc(t, A.ring());
            if (f.is_zero()) throw ZeroArgument("symbol entry " + t);
            if (extend) {
                absorb_factors(A, f.num());
                absorb_factors(A, f.den());
            }
            term = term.tensor(expand_factor(f, A));
        }
        if (out)
            *out += term;
        else
            out = term;
        pos = close + 1;
    }
    if (!out) {
        if (trim(text) == "0") return Symbol(0);
        throw ParseError("no symbol terms in '" + text + "'");
    }
    return *out;
}

namespace {

const Symbol& pi_word(const Word& w) {
    thread_local std::map<Word, Symbol> cache;
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    int n = int(w.size());
    Symbol s(n);
    if (n <= 1) {
        s.add(w, 1);
    } else {
        Rational f(n - 1, n);
        const Symbol& head = pi_word(Word(w.begin(), w.end() - 1));
        for (const auto& [u, c] : head.terms()) {
            Word v = u;
            v.push_back(w.back());
            s.add(v, f * c);
        }
        const Symbol& tail = pi_word(Word(w.begin() + 1, w.end()));
        for (const auto& [u, c] : tail.terms()) {
            Word v = u;
            v.push_back(w.front());
            s.add(v, -f * c);
        }
    }
    return cache.emplace(w, std::move(s)).first->second;
}

}  // namespace

Symbol project_pi(int w, const Symbol& S) {
    if (!S.is_zero() && S.weight() != w)
        throw WeightMismatch("Pi_" + std::to_string(w) + " on weight " + std::to_string(S.weight()));
    Symbol out(w);
    for (const auto& [u, c] : S.terms())
        for (const auto& [v, d] : pi_word(u).terms()) out.add(v, c * d);
    return out;
}

Symbol project_partition(const Partition& lambda, const Symbol& S) {
    int total = 0;
    for (int p : lambda) total += p;
    if (!S.is_zero() && S.weight() != total)
        throw WeightMismatch("partition of " + std::to_string(total) + " on weight " +
                             std::to_string(S.weight()));
    Symbol out(total);
    for (const auto& [u, c] : S.terms()) {
        Symbol acc = Symbol::unit();
        size_t pos = 0;
        for (int p : lambda) {
            Word block(u.begin() + pos, u.begin() + pos + p);
            acc = acc.tensor(pi_word(block));
            pos += p;
        }
        out += acc * c;
    }
    return out;
}

std::vector<Partition> partitions_desc(int w) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    if (w >= 1) rec(w, w);
    return out;
}

std::string partition_to_string(const Partition& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

IntegrabilityReport integrability_check(const Symbol& S, const Alphabet& A) {
    IntegrabilityReport rep;
    size_t nv = A.ring()->size();
    std::vector<int> vars;
    for (size_t k = 0; k < nv; ++k) {
        bool used = false;
        for (size_t i = 0; i < A.size(); ++i) used = used || A.letter(int(i)).depends_on(int(k));
        if (used) vars.push_back(int(k));
    }
    if (vars.size() < 2) {
        rep.single_variable = true;
        return rep;
    }
    if (S.weight() < 2) return rep;

    size_t n = A.size();
    MPoly L = MPoly::constant(A.ring(), 1);
    for (size_t i = 0; i < n; ++i)
        if (!A.is_constant(int(i))) L *= A.letter(int(i));
    std::vector<MPoly> cofactor(n);
    for (size_t i = 0; i < n; ++i) cofactor[i] = *L.divide_exact(A.letter(int(i)));

    for (size_t a = 0; a < vars.size(); ++a)
        for (size_t b = a + 1; b < vars.size(); ++b) {
            int k = vars[a], l = vars[b];
            std::vector<std::vector<MPoly>> wedge(n, std::vector<MPoly>(n));
            for (size_t p = 0; p < n; ++p)
                for (size_t q = 0; q < n; ++q) {
                    if (p == q || A.is_constant(int(p)) || A.is_constant(int(q))) continue;
                    const MPoly &wp = A.letter(int(p)), &wq = A.letter(int(q));
                    MPoly num = wp.derivative(k) * wq.derivative(l) - wp.derivative(l) * wq.derivative(k);
                    if (num.is_zero()) continue;
                    MPoly rest = *cofactor[p].divide_exact(wq);
                    wedge[p][q] = num * rest;
                }
            for (int j = 0; j + 1 < S.weight(); ++j) {
                std::map<Word, MPoly> groups;
                for (const auto& [w, c] : S.terms()) {
                    const MPoly& wd = wedge[w[j]][w[j + 1]];
                    if (wd.is_zero()) continue;
                    Word key = w;
                    key.erase(key.begin() + j, key.begin() + j + 2);
                    MPoly term = wd;
                    term *= c;
                    groups[key] += term;
                }
                for (const auto& [key, poly] : groups) {
                    if (poly.is_zero()) continue;
                    rep.integrable = false;
                    std::ostringstream os;
                    os << "slots " << j << "," << j + 1 << " variables " << A.ring()->vars[k] << ","
                       << A.ring()->vars[l] << " remaining word [";
                    for (size_t i = 0; i < key.size(); ++i) os << (i ? " | " : "") << A.name(key[i]);
                    os << "] numerator " << poly.to_string();
                    rep.witness = os.str();
                    return rep;
                }
            }
        }
    return rep;
}

}  // namespace mplsym
