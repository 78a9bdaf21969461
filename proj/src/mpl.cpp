#include "mplsym/mpl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "mplsym/lexer.hpp"

namespace mplsym {

namespace {

std::shared_ptr<Expr> node(Kind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}

}  // namespace

ExprPtr make_G(std::vector<RatFunc> a, RatFunc x) {
    auto e = node(Kind::G);
    e->args = std::move(a);
    e->arg = std::move(x);
    return e;
}

ExprPtr make_Li(std::vector<int> m, std::vector<RatFunc> x) {
    if (m.size() != x.size() || m.empty())
        throw PreconditionViolated("Li needs as many indices as arguments");
    for (int v : m)
        if (v < 1) throw PreconditionViolated("Li indices must be positive");
    auto e = node(Kind::Li);
    e->index = std::move(m);
    e->args = std::move(x);
    return e;
}

ExprPtr make_H(std::vector<int> a, RatFunc x) {
    for (int v : a)
        if (v < -1 || v > 1) throw PreconditionViolated("H indices must lie in {-1,0,1}");
    auto e = node(Kind::H);
    e->index = std::move(a);
    e->arg = std::move(x);
    return e;
}

ExprPtr make_nielsen(int n, int p, RatFunc x) {
    if (n < 1 || p < 1) throw PreconditionViolated("Nielsen indices must be positive");
    auto e = node(Kind::Nielsen);
    e->index = {n, p};
    e->arg = std::move(x);
    return e;
}

ExprPtr make_log(RatFunc f) {
    auto e = node(Kind::Log);
    e->arg = std::move(f);
    return e;
}

ExprPtr make_const(Constant c) {
    auto e = node(Kind::Const);
    e->constant = c;
    return e;
}

ExprPtr make_scalar(const Rational& q) {
    auto e = node(Kind::Scalar);
    e->scalar = q;
    return e;
}

ExprPtr make_sum(std::vector<ExprPtr> terms) {
    if (terms.empty()) return make_scalar(0);
    if (terms.size() == 1) return terms[0];
    auto e = node(Kind::Sum);
    e->children = std::move(terms);
    return e;
}

ExprPtr make_product(std::vector<ExprPtr> factors) {
    if (factors.empty()) return make_scalar(1);
    if (factors.size() == 1) return factors[0];
    auto e = node(Kind::Product);
    e->children = std::move(factors);
    return e;
}

ExprPtr make_power(ExprPtr base, int k) {
    if (k < 0) throw PreconditionViolated("negative powers are not supported");
    if (k == 1) return base;
    auto e = node(Kind::Power);
    e->children = {std::move(base)};
    e->exponent = k;
    return e;
}

ExprPtr scaled(const Rational& c, ExprPtr e) {
    if (c == 1) return e;
    return make_product({make_scalar(c), std::move(e)});
}

ExprPtr operator+(const ExprPtr& a, const ExprPtr& b) { return make_sum({a, b}); }
ExprPtr operator-(const ExprPtr& a, const ExprPtr& b) { return make_sum({a, scaled(-1, b)}); }
ExprPtr operator*(const ExprPtr& a, const ExprPtr& b) { return make_product({a, b}); }

bool is_zero_scalar(const ExprPtr& e) { return e->kind == Kind::Scalar && e->scalar == 0; }

int weight(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::G:
            return int(e->args.size());
        case Kind::H:
            return int(e->index.size());
        case Kind::Li: {
            int w = 0;
            for (int m : e->index) w += m;
            return w;
        }
        case Kind::Nielsen:
            return e->index[0] + e->index[1];
        case Kind::Log:
            return 1;
        case Kind::Const:
            switch (e->constant) {
                case Constant::Pi:
                case Constant::Ln2:
                    return 1;
                case Constant::Zeta3:
                    return 3;
                case Constant::Li4Half:
                    return 4;
            }
            return 0;
        case Kind::Scalar:
            return 0;
        case Kind::Sum: {
            int w = -1;
            for (const auto& c : e->children) {
                if (is_zero_scalar(c)) continue;
                int v = weight(c);
                if (w >= 0 && v != w)
                    throw MixedWeight("sum mixes weights " + std::to_string(w) + " and " +
                                      std::to_string(v));
                w = v;
            }
            return std::max(w, 0);
        }
        case Kind::Product: {
            int w = 0;
            for (const auto& c : e->children) w += weight(c);
            return w;
        }
        case Kind::Power:
            return e->exponent * weight(e->children[0]);
    }
    return 0;
}

namespace {

std::string const_name(Constant c) {
    switch (c) {
        case Constant::Pi:
            return "pi";
        case Constant::Zeta3:
            return "zeta3";
        case Constant::Ln2:
            return "ln2";
        case Constant::Li4Half:
            return "Li4half";
    }
    return "";
}

std::string join_args(const std::vector<RatFunc>& a) {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].to_string();
    return s;
}

std::string join_ints(const std::vector<int>& a) {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s;
}

bool is_atom(const ExprPtr& e) {
    return e->kind != Kind::Sum && e->kind != Kind::Product && e->kind != Kind::Power &&
           !(e->kind == Kind::Scalar && (e->scalar < 0 || e->scalar.get_den() != 1));
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::G:
            return "G(" + join_args(e->args) + ";" + e->arg.to_string() + ")";
        case Kind::H:
            return "H(" + join_ints(e->index) + ";" + e->arg.to_string() + ")";
        case Kind::Li:
            if (e->index.size() == 1)
                return "Li" + std::to_string(e->index[0]) + "(" + join_args(e->args) + ")";
            return "Li[" + join_ints(e->index) + "](" + join_args(e->args) + ")";
        case Kind::Nielsen:
            return "S[" + join_ints(e->index) + "](" + e->arg.to_string() + ")";
        case Kind::Log:
            return "log(" + e->arg.to_string() + ")";
        case Kind::Const:
            return const_name(e->constant);
        case Kind::Scalar:
            return e->scalar.get_str();
        case Kind::Sum: {
            std::string s;
            for (size_t i = 0; i < e->children.size(); ++i) {
                std::string t = to_string(e->children[i]);
                if (i == 0)
                    s = t;
                else if (!t.empty() && t[0] == '-')
                    s += " - " + t.substr(1);
                else
                    s += " + " + t;
            }
            return s;
        }
        case Kind::Product: {
            std::string s;
            for (size_t i = 0; i < e->children.size(); ++i) {
                const ExprPtr& c = e->children[i];
                std::string t = to_string(c);
                if (i == 0 && c->kind == Kind::Scalar) {
                    if (c->scalar == -1) {
                        s = "-";
                        continue;
                    }
                    s = t;
                    continue;
                }
                if (!is_atom(c) && c->kind != Kind::Power) t = "(" + t + ")";
                if (!s.empty() && s != "-") s += "*";
                s += t;
            }
            return s;
        }
        case Kind::Power: {
            const ExprPtr& b = e->children[0];
            std::string t = to_string(b);
            if (!is_atom(b)) t = "(" + t + ")";
            return t + "^" + std::to_string(e->exponent);
        }
    }
    return "";
}

std::vector<Monom> expand(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Scalar:
            if (e->scalar == 0) return {};
            return {Monom{e->scalar, {}}};
        case Kind::Sum: {
            std::vector<Monom> out;
            for (const auto& c : e->children) {
                auto t = expand(c);
                out.insert(out.end(), t.begin(), t.end());
            }
            return out;
        }
        case Kind::Product: {
            std::vector<Monom> acc = {Monom{1, {}}};
            for (const auto& c : e->children) {
                std::vector<Monom> next;
                for (const Monom& a : expand(c))
                    for (const Monom& b : acc) {
                        Monom m{a.coeff * b.coeff, b.factors};
                        m.factors.insert(m.factors.end(), a.factors.begin(), a.factors.end());
                        next.push_back(std::move(m));
                    }
                acc = std::move(next);
            }
            return acc;
        }
        case Kind::Power: {
            std::vector<Monom> acc = {Monom{1, {}}};
            auto base = expand(e->children[0]);
            for (int i = 0; i < e->exponent; ++i) {
                std::vector<Monom> next;
                for (const Monom& a : base)
                    for (const Monom& b : acc) {
                        Monom m{a.coeff * b.coeff, b.factors};
                        m.factors.insert(m.factors.end(), a.factors.begin(), a.factors.end());
                        next.push_back(std::move(m));
                    }
                acc = std::move(next);
            }
            return acc;
        }
        default:
            return {Monom{1, {e}}};
    }
}

ExprPtr from_monoms(const std::vector<Monom>& terms) {
    // Merge equal monomials by their sorted factor strings.
    std::map<std::vector<std::string>, std::pair<Rational, std::vector<ExprPtr>>> merged;
    std::vector<std::vector<std::string>> order;
    for (const Monom& m : terms) {
        std::vector<std::pair<std::string, ExprPtr>> fs;
        for (const auto& f : m.factors) fs.push_back({to_string(f), f});
        std::stable_sort(fs.begin(), fs.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::string> key;
        std::vector<ExprPtr> facs;
        for (auto& [k, f] : fs) {
            key.push_back(k);
            facs.push_back(f);
        }
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, std::make_pair(m.coeff, facs));
            order.push_back(key);
        } else {
            it->second.first += m.coeff;
        }
    }
    std::vector<ExprPtr> out;
    for (const auto& key : order) {
        const auto& [c, facs] = merged[key];
        if (c == 0) continue;
        std::vector<ExprPtr> prod;
        if (c != 1) prod.push_back(make_scalar(c));
        for (size_t i = 0; i < facs.size();) {
            size_t j = i;
            while (j < facs.size() && key[j] == key[i]) ++j;
            prod.push_back(make_power(facs[i], int(j - i)));
            i = j;
        }
        out.push_back(make_product(prod));
    }
    return make_sum(out);
}

namespace {

bool is_li_name(const std::string& s) {
    if (s.size() < 3 || s.compare(0, 2, "Li") != 0) return false;
    return std::all_of(s.begin() + 2, s.end(), [](char c) { return std::isdigit((unsigned char)c); });
}

bool is_function_name(const std::string& s) {
    return s == "G" || s == "H" || s == "Li" || s == "S" || s == "log" || s == "ln" || is_li_name(s);
}

bool is_constant_name(const std::string& s) {
    return s == "pi" || s == "zeta3" || s == "ln2" || s == "Li4half";
}

class ExprParser {
public:
    ExprParser(const std::string& text, RingPtr ring) : text_(text), lx_(text), ring_(std::move(ring)) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        if (!lx_.at_end()) lx_.fail("unexpected trailing input");
        return e;
    }

private:
    ExprPtr expr() {
        std::vector<ExprPtr> terms = {term()};
        while (true) {
            if (lx_.accept("+"))
                terms.push_back(term());
            else if (lx_.accept("-"))
                terms.push_back(scaled(-1, term()));
            else
                return make_sum(terms);
        }
    }

    ExprPtr term() {
        std::vector<ExprPtr> f = {unary()};
        while (true) {
            if (lx_.accept("*")) {
                f.push_back(unary());
            } else if (lx_.accept("/")) {
                ExprPtr d = unary();
                if (d->kind != Kind::Scalar || d->scalar == 0)
                    lx_.fail("division only by nonzero rational numbers");
                f.push_back(make_scalar(1 / d->scalar));
            } else {
                break;
            }
        }
        // Fold adjacent numbers so "1/24" stays one scalar.
        std::vector<ExprPtr> out;
        Rational c = 1;
        for (auto& x : f) {
            if (x->kind == Kind::Scalar)
                c *= x->scalar;
            else
                out.push_back(x);
        }
        if (out.empty()) return make_scalar(c);
        if (c != 1) out.insert(out.begin(), make_scalar(c));
        return make_product(out);
    }

    ExprPtr unary() {
        if (lx_.accept("-")) {
            ExprPtr e = unary();
            if (e->kind == Kind::Scalar) return make_scalar(-e->scalar);
            return scaled(-1, e);
        }
        if (lx_.accept("+")) return unary();
        return power();
    }

    ExprPtr power() {
        ExprPtr b = atom();
        if (!lx_.accept("^")) return b;
        bool paren = lx_.accept("(");
        if (lx_.peek().kind != Tok::Number) lx_.fail("expected non-negative integer exponent");
        int k = std::stoi(lx_.next().text);
        if (paren) lx_.expect(")");
        if (b->kind == Kind::Scalar) {
            Rational r = 1;
            for (int i = 0; i < k; ++i) r *= b->scalar;
            return make_scalar(r);
        }
        return make_power(b, k);
    }

    std::vector<int> int_list(const std::string& close) {
        std::vector<int> v;
        do {
            int s = lx_.accept("-") ? -1 : 1;
            if (lx_.peek().kind != Tok::Number) lx_.fail("expected integer");
            v.push_back(s * std::stoi(lx_.next().text));
        } while (lx_.accept(","));
        lx_.expect(close);
        return v;
    }

    // Reads rational-function arguments up to the closing ')', split at
    // top-level ',' and at one optional ';'.
    std::pair<std::vector<RatFunc>, std::optional<RatFunc>> call_args(bool allow_semicolon) {
        std::vector<RatFunc> before;
        std::optional<RatFunc> after;
        bool seen_semi = false;
        while (true) {
            size_t start = lx_.peek().pos;
            int depth = 0;
            size_t end = start;
            while (true) {
                const Token& t = lx_.peek();
                if (t.kind == Tok::End) lx_.fail("unterminated argument list");
                if (t.kind == Tok::Punct && depth == 0 && (t.text == "," || t.text == ";" || t.text == ")"))
                    break;
                if (t.kind == Tok::Punct && t.text == "(") ++depth;
                if (t.kind == Tok::Punct && t.text == ")") --depth;
                end = t.pos + t.text.size();
                lx_.next();
            }
            std::string piece = text_.substr(start, end > start ? end - start : 0);
            Token sep = lx_.next();
            if (!piece.empty() || sep.text != ")" || !before.empty() || seen_semi) {
                if (piece.empty()) throw ParseError("empty argument in \"" + text_ + "\"");
                RatFunc f = parse_ratfunc(piece, ring_);
                if (seen_semi)
                    after = f;
                else
                    before.push_back(f);
            }
            if (sep.text == ")") break;
            if (sep.text == ";") {
                if (!allow_semicolon || seen_semi) throw ParseError("unexpected ';' in \"" + text_ + "\"");
                seen_semi = true;
            }
        }
        if (allow_semicolon && !after) throw ParseError("missing ';argument' in \"" + text_ + "\"");
        return {before, after};
    }

    ExprPtr atom() {
        const Token t = lx_.peek();
        if (t.kind == Tok::Number) {
            lx_.next();
            return make_scalar(Rational(Integer(t.text)));
        }
        if (lx_.accept("(")) {
            ExprPtr e = expr();
            lx_.expect(")");
            return e;
        }
        if (t.kind != Tok::Ident) lx_.fail("expected expression");
        lx_.next();
        const std::string& n = t.text;
        bool call = lx_.peek().kind == Tok::Punct && (lx_.peek().text == "(" || lx_.peek().text == "[");
        if (!call) {
            if (n == "pi") return make_const(Constant::Pi);
            if (n == "zeta3") return make_const(Constant::Zeta3);
            if (n == "ln2") return make_const(Constant::Ln2);
            if (n == "Li4half") return make_const(Constant::Li4Half);
            lx_.fail("unknown name '" + n + "' (variables may only appear inside function arguments)");
        }
        if (n == "G") {
            lx_.expect("(");
            auto [a, x] = call_args(true);
            return make_G(a, *x);
        }
        if (n == "H") {
            lx_.expect("(");
            std::vector<int> a;
            if (!lx_.accept(";")) {
                do {
                    int s = lx_.accept("-") ? -1 : 1;
                    if (lx_.peek().kind != Tok::Number) lx_.fail("expected H index");
                    a.push_back(s * std::stoi(lx_.next().text));
                } while (lx_.accept(","));
                lx_.expect(";");
            }
            auto [xs, none] = call_args(false);
            if (xs.size() != 1) throw ParseError("H needs exactly one argument");
            return make_H(a, xs[0]);
        }
        if (n == "S") {
            lx_.expect("[");
            auto np = int_list("]");
            if (np.size() != 2) throw ParseError("S[n,p] needs two indices");
            lx_.expect("(");
            auto [xs, none] = call_args(false);
            if (xs.size() != 1) throw ParseError("S[n,p] needs one argument");
            return make_nielsen(np[0], np[1], xs[0]);
        }
        if (n == "Li") {
            lx_.expect("[");
            auto m = int_list("]");
            lx_.expect("(");
            auto [xs, none] = call_args(false);
            return make_Li(m, xs);
        }
        if (is_li_name(n)) {
            int m = std::stoi(n.substr(2));
            lx_.expect("(");
            auto [xs, none] = call_args(false);
            if (xs.size() != 1) throw ParseError(n + " needs one argument");
            return make_Li({m}, xs);
        }
        if (n == "log" || n == "ln") {
            lx_.expect("(");
            auto [xs, none] = call_args(false);
            if (xs.size() != 1) throw ParseError("log needs one argument");
            return make_log(xs[0]);
        }
        lx_.fail("unknown function '" + n + "'");
    }

    std::string text_;
    Lexer lx_;
    RingPtr ring_;
};

}  // namespace

std::vector<std::string> expr_variables(const std::string& text) {
    Lexer lx(text);
    std::set<std::string> vars;
    while (!lx.at_end()) {
        Token t = lx.next();
        if (t.kind != Tok::Ident) continue;
        bool call = lx.peek().kind == Tok::Punct && (lx.peek().text == "(" || lx.peek().text == "[");
        if (call && is_function_name(t.text)) continue;
        if (!call && is_constant_name(t.text)) continue;
        vars.insert(t.text);
    }
    return {vars.begin(), vars.end()};
}

Parsed parse_expr(const std::string& text, RingPtr ring) {
    if (!ring) ring = make_ring(expr_variables(text));
    ExprParser p(text, ring);
    return {p.parse(), ring};
}

namespace {

Symbol li1_symbol(int n, const RatFunc& R, const Alphabet& A) {
    RatFunc omr = RatFunc(1) - R;
    if (R.is_zero() || omr.is_zero()) return Symbol(n);
    Symbol s = -expand_factor(omr, A);
    Symbol r = expand_factor(R, A);
    for (int i = 1; i < n; ++i) s = s.tensor(r);
    return s;
}

Symbol g_symbol(const std::vector<RatFunc>& a, const RatFunc& x, const Alphabet& A) {
    std::vector<RatFunc> al;
    for (const auto& v : a) al.push_back(v.lifted(A.ring()));
    return polygon_symbol(polygon_of_G(al, x.lifted(A.ring())), A);
}

Symbol h_symbol(const std::vector<int>& a, const RatFunc& x, const Alphabet& A) {
    int k = 0;
    bool binary = true;
    for (int v : a) {
        k += v == 1;
        binary = binary && v != -1;
    }
    int w = int(a.size());
    if (w == 0) return Symbol::unit();
    Symbol s = Symbol::unit();
    if (binary) {
        RatFunc xl = x.lifted(A.ring());
        for (int i = w - 1; i >= 0; --i) {
            RatFunc f = RatFunc(a[i]) - xl;
            if (f.is_zero()) return Symbol(w);
            s = s.tensor(expand_factor(f, A));
        }
    } else {
        std::vector<RatFunc> g;
        for (int v : a) g.push_back(RatFunc(v));
        s = g_symbol(g, x, A);
    }
    return k % 2 ? -s : s;
}

}  // namespace

Symbol symbol_of(const ExprPtr& e, const Alphabet& A) {
    switch (e->kind) {
        case Kind::G:
            return g_symbol(e->args, e->arg, A);
        case Kind::H:
            return h_symbol(e->index, e->arg, A);
        case Kind::Nielsen: {
            std::vector<int> a(e->index[0], 0);
            a.insert(a.end(), e->index[1], 1);
            return h_symbol(a, e->arg, A);
        }
        case Kind::Li: {
            if (e->index.size() == 1) return li1_symbol(e->index[0], e->args[0].lifted(A.ring()), A);
            auto g = expand(li_to_g(e->index, e->args));
            Symbol s(weight(e));
            for (const Monom& m : g) s += symbol_of(m.factors.at(0), A) * m.coeff;
            return s;
        }
        case Kind::Log:
            return expand_factor(e->arg.lifted(A.ring()), A);
        case Kind::Const:
            switch (e->constant) {
                case Constant::Pi:
                    return Symbol(1);
                case Constant::Zeta3:
                    return Symbol(3);
                case Constant::Ln2:
                    return expand_factor(RatFunc(2), A);
                case Constant::Li4Half:
                    return li1_symbol(4, RatFunc(Rational(1, 2)), A);
            }
            return Symbol(0);
        case Kind::Scalar:
            return Symbol::unit() * e->scalar;
        case Kind::Sum: {
            int w = weight(e);
            Symbol s(w);
            for (const auto& c : e->children) {
                if (is_zero_scalar(c)) continue;
                s += symbol_of(c, A);
            }
            return s;
        }
        case Kind::Product: {
            Symbol s = Symbol::unit();
            for (const auto& c : e->children) s = shuffle(s, symbol_of(c, A));
            return s;
        }
        case Kind::Power: {
            Symbol b = symbol_of(e->children[0], A);
            Symbol s = Symbol::unit();
            for (int i = 0; i < e->exponent; ++i) s = shuffle(s, b);
            return s;
        }
    }
    return Symbol(0);
}

namespace {

void collect_letters(const ExprPtr& e, Alphabet& A) {
    auto absorb = [&](const RatFunc& f) {
        if (f.is_zero()) return;
        RatFunc g = f.lifted(A.ring());
        absorb_factors(A, g.num());
        absorb_factors(A, g.den());
    };
    auto iterated = [&](std::vector<RatFunc> vals, const RatFunc& x) {
        vals.push_back(x);
        for (size_t i = 0; i < vals.size(); ++i) {
            absorb(vals[i]);
            for (size_t j = i + 1; j < vals.size(); ++j) absorb(vals[i] - vals[j]);
        }
    };
    switch (e->kind) {
        case Kind::G:
            iterated(e->args, e->arg);
            return;
        case Kind::H: {
            std::vector<RatFunc> vals;
            for (int v : e->index) vals.push_back(RatFunc(v));
            iterated(vals, e->arg);
            return;
        }
        case Kind::Nielsen:
            iterated({RatFunc(0), RatFunc(1)}, e->arg);
            return;
        case Kind::Li:
            for (const Monom& m : expand(li_to_g(e->index, e->args)))
                for (const auto& f : m.factors) collect_letters(f, A);
            return;
        case Kind::Log:
            absorb(e->arg);
            return;
        case Kind::Const:
            if (e->constant == Constant::Ln2 || e->constant == Constant::Li4Half) absorb(RatFunc(2));
            return;
        case Kind::Scalar:
            return;
        case Kind::Sum:
        case Kind::Product:
        case Kind::Power:
            for (const auto& c : e->children) collect_letters(c, A);
            return;
    }
}

}  // namespace

Alphabet expr_alphabet(const ExprPtr& e, const RingPtr& ring) {
    Alphabet A(ring ? ring : make_ring({}));
    collect_letters(e, A);
    return A;
}

ExprPtr li_to_g(const std::vector<int>& m, const std::vector<RatFunc>& x) {
    size_t k = m.size();
    if (x.size() != k || k == 0) throw PreconditionViolated("Li needs as many indices as arguments");
    std::vector<RatFunc> g;
    RatFunc prod(1);
    for (size_t j = k; j-- > 0;) {
        if (x[j].is_zero()) throw ZeroArgument("Li argument " + std::to_string(j + 1) + " is 0");
        prod = prod * x[j];
        for (int z = 1; z < m[j]; ++z) g.push_back(RatFunc(0));
        g.push_back(prod.inverse());
    }
    return scaled(k % 2 ? -1 : 1, make_G(g, RatFunc(1)));
}

ExprPtr g_to_li(const ExprPtr& e) {
    Rational c = 1;
    ExprPtr g = e;
    if (e->kind == Kind::Product && e->children.size() == 2 && e->children[0]->kind == Kind::Scalar) {
        c = e->children[0]->scalar;
        g = e->children[1];
    }
    if (g->kind != Kind::G) throw PreconditionViolated("g_to_li expects a G function");
    const auto& a = g->args;
    if (a.empty() || a.back().is_zero()) throw PreconditionViolated("last singularity must be nonzero");
    RatFunc x = g->arg;
    if (x.is_zero()) throw ZeroArgument("G argument is 0");
    std::vector<int> n;
    std::vector<RatFunc> b;
    int zeros = 0;
    for (const auto& v : a) {
        if (v.is_zero()) {
            ++zeros;
            continue;
        }
        n.push_back(zeros + 1);
        b.push_back(v / x);
        zeros = 0;
    }
    size_t k = n.size();
    std::vector<int> m(k);
    std::vector<RatFunc> xs(k);
    for (size_t j = 1; j <= k; ++j) {
        m[k - j] = n[j - 1];
        xs[k - j] = j == 1 ? b[0].inverse() : b[j - 2] / b[j - 1];
    }
    if (k % 2) c = -c;
    return scaled(c, make_Li(m, xs));
}

namespace {

std::vector<std::pair<std::vector<RatFunc>, Rational>> shuffle_vectors(const std::vector<RatFunc>& a,
                                                                        const std::vector<RatFunc>& b) {
    Word ia, ib;
    for (size_t i = 0; i < a.size(); ++i) ia.push_back(int(i));
    for (size_t i = 0; i < b.size(); ++i) ib.push_back(int(a.size() + i));
    std::vector<std::pair<std::vector<RatFunc>, Rational>> out;
    std::map<std::string, size_t> seen;
    for (const Word& w : shuffle_words(ia, ib)) {
        std::vector<RatFunc> v;
        std::string key;
        for (int i : w) {
            v.push_back(i < int(a.size()) ? a[i] : b[i - a.size()]);
            key += v.back().to_string() + ",";
        }
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen[key] = out.size();
            out.push_back({v, 1});
        } else {
            out[it->second].second += 1;
        }
    }
    return out;
}

struct GTerm {
    Rational c;
    std::vector<std::vector<RatFunc>> factors;
};

std::vector<GTerm> trailing_free(const std::vector<RatFunc>& w) {
    size_t k = 0;
    while (k < w.size() && w[w.size() - 1 - k].is_zero()) ++k;
    if (k == 0 || k == w.size()) return {GTerm{1, {w}}};
    std::vector<RatFunc> u(w.begin(), w.end() - k), z(k, RatFunc(0));
    std::vector<GTerm> out;
    for (const GTerm& t : trailing_free(u)) {
        GTerm g = t;
        g.factors.push_back(z);
        out.push_back(g);
    }
    for (const auto& [v, mult] : shuffle_vectors(u, z)) {
        if (v == w) continue;
        for (GTerm t : trailing_free(v)) {
            t.c *= -mult;
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace

ExprPtr g_shuffle_expand(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b, const RatFunc& x) {
    std::vector<ExprPtr> terms;
    for (const auto& [v, mult] : shuffle_vectors(a, b)) terms.push_back(scaled(mult, make_G(v, x)));
    return make_sum(terms);
}

ExprPtr g_extract_trailing_zeros(const std::vector<RatFunc>& w, const RatFunc& x) {
    std::vector<Monom> ms;
    for (const GTerm& t : trailing_free(w)) {
        Monom m{t.c, {}};
        for (const auto& f : t.factors) m.factors.push_back(make_G(f, x));
        ms.push_back(std::move(m));
    }
    return from_monoms(ms);
}

ExprPtr hoelder_dual(const ExprPtr& g) {
    if (g->kind != Kind::G) throw PreconditionViolated("Hoelder duality expects a G function");
    if (g->arg != RatFunc(1)) throw PreconditionViolated("Hoelder duality needs argument 1");
    const auto& a = g->args;
    if (a.empty()) return g;
    if (a.front() == RatFunc(1)) throw PreconditionViolated("first singularity equals 1");
    if (a.back().is_zero()) throw PreconditionViolated("last singularity is 0");
    std::vector<RatFunc> b;
    for (auto it = a.rbegin(); it != a.rend(); ++it) b.push_back(RatFunc(1) - *it);
    return scaled(a.size() % 2 ? -1 : 1, make_G(b, RatFunc(1)));
}

bool CMZVSpec::convergent() const { return !(m.at(0) == 1 && s.at(0) == 1); }

int CMZVSpec::weight() const {
    int w = 0;
    for (int v : m) w += v;
    return w;
}

ExprPtr cmzv_to_g(const CMZVSpec& z) {
    if (z.m.size() != z.s.size() || z.m.empty())
        throw PreconditionViolated("CMZV needs equally many indices and signs");
    std::vector<RatFunc> g;
    int hat = 1;
    for (size_t j = 0; j < z.m.size(); ++j) {
        if (z.s[j] != 1 && z.s[j] != -1) throw PreconditionViolated("CMZV signs must be +-1");
        if (z.m[j] < 1) throw PreconditionViolated("CMZV indices must be positive");
        hat *= z.s[j];
        for (int i = 1; i < z.m[j]; ++i) g.push_back(RatFunc(0));
        g.push_back(RatFunc(hat));
    }
    return scaled(z.m.size() % 2 ? -1 : 1, make_G(g, RatFunc(1)));
}

Polygon cmzv_polygon(const CMZVSpec& z) {
    ExprPtr e = cmzv_to_g(z);
    const ExprPtr& g = e->kind == Kind::G ? e : e->children[1];
    return polygon_of_G(g->args, g->arg);
}

Symbol cmzv_symbol(const CMZVSpec& z, const Alphabet& A) {
    Symbol s = polygon_symbol(cmzv_polygon(z), A);
    return z.m.size() % 2 ? -s : s;
}

}  // namespace mplsym
