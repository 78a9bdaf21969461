#include "mplsym/alphabet.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace mplsym {

MPoly canonical_letter(const MPoly& p) { return p.primitive(); }

static MPoly display_form(const MPoly& letter) {
    return letter.constant_value() < 0 ? -letter : letter;
}

Alphabet Alphabet::from_strings(const std::vector<std::string>& letters, const RingPtr& ring) {
    Alphabet A(ring);
    for (const std::string& s : letters) {
        RatFunc f = parse_ratfunc(s, ring);
        if (!f.den().is_constant()) throw ParseError("letter is not a polynomial: " + s);
        MPoly p = f.num();
        if (p.is_constant() && abs(p.constant_value()) <= 1)
            throw PreconditionViolated("letter is a unit: " + s);
        A.add(p);
    }
    return A;
}

Alphabet Alphabet::hpl() {
    return from_strings({"2", "x", "1-x", "1+x"}, make_ring({"x"}));
}

std::vector<std::string> Alphabet::names() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < size(); ++i) out.push_back(name(int(i)));
    return out;
}

int Alphabet::find(const MPoly& p) const {
    if (p.is_zero()) return -1;
    MPoly c = p.is_constant() ? MPoly::constant(ring_, abs(p.constant_value()))
                              : canonical_letter(p).lifted(ring_);
    for (size_t i = 0; i < letters_.size(); ++i)
        if (letters_[i] == c) return int(i);
    return -1;
}

int Alphabet::add(const MPoly& p) {
    int i = find(p);
    if (i >= 0) return i;
    MPoly c = p.is_constant() ? MPoly::constant(ring_, abs(p.constant_value()))
                              : canonical_letter(p).lifted(ring_);
    letters_.push_back(c);
    display_.push_back(display_form(c));
    return int(letters_.size()) - 1;
}

RatFunc Alphabet::realize(const MultVector& v, int sign) const {
    MPoly num = MPoly::constant(ring_, sign), den = MPoly::constant(ring_, 1);
    for (const auto& [i, e] : v) {
        if (e > 0) num *= display_.at(i).pow(e);
        if (e < 0) den *= display_.at(i).pow(-e);
    }
    return RatFunc(num, den);
}

std::vector<Integer> Alphabet::values_at(const std::vector<Integer>& point) const {
    std::vector<Rational> pt(point.begin(), point.end());
    std::vector<Integer> out;
    for (const MPoly& p : letters_) out.push_back(p.eval(pt).get_num());
    return out;
}

namespace {

// Splits |c| into powers of the constant letters; false if a residue remains.
bool split_constant(Integer c, int sign, const Alphabet& A, MultVector& acc) {
    c = abs(c);
    for (size_t i = 0; i < A.size() && c != 1; ++i) {
        if (!A.is_constant(int(i))) continue;
        Integer q = A.letter(int(i)).constant_value().get_num();
        while (c != 0 && mpz_divisible_p(c.get_mpz_t(), q.get_mpz_t())) {
            c /= q;
            acc[int(i)] += sign;
        }
    }
    return c == 1;
}

bool split_poly(const MPoly& p, int sign, const Alphabet& A, MultVector& acc) {
    Rational c = p.content();
    if (!split_constant(c.get_num(), sign, A, acc)) return false;
    if (!split_constant(c.get_den(), -sign, A, acc)) return false;
    MPoly q = p.primitive();
    for (size_t i = 0; i < A.size() && !q.is_constant(); ++i) {
        if (A.is_constant(int(i))) continue;
        const MPoly& L = A.letter(int(i));
        if (L.total_degree() > q.total_degree()) continue;
        while (!q.is_constant()) {
            auto r = q.divide_exact(L);
            if (!r) break;
            q = *r;
            acc[int(i)] += sign;
        }
    }
    return q.is_constant();
}

void prune(MultVector& v) {
    for (auto it = v.begin(); it != v.end();) it = it->second == 0 ? v.erase(it) : std::next(it);
}

}  // namespace

std::optional<MultVector> try_decompose(const RatFunc& f, const Alphabet& A) {
    if (f.is_zero()) return std::nullopt;
    MultVector v;
    if (!split_poly(f.num(), 1, A, v)) return std::nullopt;
    if (!split_poly(f.den(), -1, A, v)) return std::nullopt;
    prune(v);
    return v;
}

MultVector decompose(const RatFunc& f, const Alphabet& A) {
    if (f.is_zero()) throw ZeroArgument("cannot decompose 0");
    auto v = try_decompose(f, A);
    if (!v) throw NotFactorable(f.to_string() + " over {" + [&] {
        std::string s;
        for (const auto& n : A.names()) s += (s.empty() ? "" : ", ") + n;
        return s;
    }() + "}");
    return *v;
}

namespace {

std::vector<Integer> small_prime_factors(Integer n, Integer& rest) {
    std::vector<Integer> out;
    n = abs(n);
    for (Integer p = 2; p * p <= n && p < 1000000; ++p) {
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            out.push_back(p);
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
        }
    }
    rest = n;
    return out;
}

std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= n; ++d) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

// Linear factors with rational roots of a univariate polynomial, plus the
// residue that has none.
std::vector<MPoly> split_univariate(MPoly q) {
    std::vector<MPoly> out;
    int var = -1;
    for (size_t i = 0; i < q.nvars(); ++i)
        if (q.depends_on(int(i))) var = int(i);
    if (var < 0) return out;
    bool progress = true;
    while (progress && q.total_degree() > 1) {
        progress = false;
        auto cs = q.coeffs_in(var);
        if (cs.front().is_zero()) {
            MPoly x = MPoly::variable(q.ring(), var);
            out.push_back(x);
            q = *q.divide_exact(x);
            progress = true;
            continue;
        }
        Integer c0 = cs.front().constant_value().get_num();
        Integer lc = cs.back().constant_value().get_num();
        for (const Integer& p : divisors(c0)) {
            for (const Integer& d : divisors(lc)) {
                for (int s : {1, -1}) {
                    MPoly f = MPoly::variable(q.ring(), var) * MPoly(Rational(d)) -
                              MPoly(Rational(s * p));
                    if (auto r = q.divide_exact(f)) {
                        out.push_back(f.primitive());
                        q = r->primitive();
                        progress = true;
                        break;
                    }
                }
                if (progress) break;
            }
            if (progress) break;
        }
    }
    if (!q.is_constant()) out.push_back(q.primitive());
    return out;
}

bool univariate(const MPoly& q) {
    int n = 0;
    for (size_t i = 0; i < q.nvars(); ++i) n += q.depends_on(int(i));
    return n == 1;
}

}  // namespace

void absorb_factors(Alphabet& A, const MPoly& c) {
    if (c.is_zero()) return;
    Rational content = c.content();
    for (const Integer& part : {Integer(content.get_num()), Integer(content.get_den())}) {
        Integer rest;
        for (const Integer& p : small_prime_factors(part, rest))
            A.add(MPoly::constant(A.ring(), Rational(p)));
        if (rest > 1) A.add(MPoly::constant(A.ring(), Rational(rest)));
    }
    MPoly q = c.primitive();
    for (size_t i = 0; i < A.size() && !q.is_constant(); ++i) {
        if (A.is_constant(int(i))) continue;
        while (!q.is_constant()) {
            auto r = q.divide_exact(A.letter(int(i)));
            if (!r) break;
            q = r->primitive();
        }
    }
    if (q.is_constant()) return;
    if (univariate(q)) {
        for (const MPoly& f : split_univariate(q)) A.add(f);
    } else {
        A.add(q);
    }
}

Alphabet extend_alphabet(const Alphabet& P) {
    if (P.size() == 0) throw PreconditionViolated("empty alphabet");
    Alphabet out = P;
    MPoly one = MPoly::constant(P.ring(), 1);
    std::vector<MPoly> cands;
    for (size_t i = 0; i < P.size(); ++i)
        for (size_t j = i; j < P.size(); ++j) {
            cands.push_back(P.display_poly(int(i)) + P.display_poly(int(j)));
            cands.push_back(P.display_poly(int(i)) - P.display_poly(int(j)));
        }
    for (size_t i = 0; i < P.size(); ++i) {
        cands.push_back(one - P.display_poly(int(i)));
        cands.push_back(one + P.display_poly(int(i)));
    }
    for (const MPoly& c : cands) absorb_factors(out, c);
    return out;
}

namespace {

void enumerate_exps(const std::vector<int>& idx, int bound, size_t pos, MultVector& cur,
                    std::vector<MultVector>& out) {
    if (pos == idx.size()) {
        out.push_back(cur);
        return;
    }
    for (int e = -bound; e <= bound; ++e) {
        if (e) cur[idx[pos]] = e;
        enumerate_exps(idx, bound - std::abs(e), pos + 1, cur, out);
        cur.erase(idx[pos]);
    }
}

struct ArgKey {
    int distinct, nonconst, cnst, sign_rank;
    std::vector<int> exps, const_exps;
    auto tie() const { return std::tie(distinct, nonconst, cnst, sign_rank, exps, const_exps); }
    bool operator<(const ArgKey& o) const { return tie() < o.tie(); }
};

}  // namespace

std::vector<CandidateArg> candidate_args_depth1(const Alphabet& A, int bound, int const_bound) {
    if (bound < 1) throw PreconditionViolated("bound must be >= 1");
    std::vector<int> nc, cc;
    for (size_t i = 0; i < A.size(); ++i) (A.is_constant(int(i)) ? cc : nc).push_back(int(i));
    std::vector<MultVector> nv, cv;
    MultVector cur;
    enumerate_exps(nc, bound, 0, cur, nv);
    enumerate_exps(cc, const_bound, 0, cur, cv);

    std::vector<Integer> point = default_prime_point(A.ring()->size());
    std::vector<Integer> values = A.values_at(point);
    bool use_filter = true;
    try {
        prime_substitution_filter(MPoly(1), values, point);
    } catch (const BadPrimePoint&) {
        use_filter = false;
    }

    std::map<std::pair<int, int>, MPoly> powers;
    auto power = [&](int i, int e) -> const MPoly& {
        auto it = powers.find({i, e});
        if (it == powers.end()) it = powers.emplace(std::make_pair(i, e), A.display_poly(i).pow(e)).first;
        return it->second;
    };

    std::vector<std::pair<ArgKey, CandidateArg>> found;
    for (const MultVector& a : nv)
        for (const MultVector& b : cv) {
            MultVector v = a;
            v.insert(b.begin(), b.end());
            MPoly N = MPoly::constant(A.ring(), 1), D = MPoly::constant(A.ring(), 1);
            for (const auto& [i, e] : v) (e > 0 ? N : D) *= power(i, std::abs(e));
            for (int s : {1, -1}) {
                if (v.empty() && s == 1) continue;
                MPoly P = D - N * MPoly(Rational(s));
                if (P.is_zero()) continue;
                if (use_filter && !P.is_constant() &&
                    !prime_substitution_filter(P, values, point))
                    continue;
                MultVector tmp;
                if (!split_poly(P, 1, A, tmp)) continue;
                ArgKey key{0, 0, 0, s == 1 ? 0 : 1, {}, {}};
                for (size_t i = 0; i < A.size(); ++i) {
                    auto it = v.find(int(i));
                    int e = it == v.end() ? 0 : it->second;
                    if (A.is_constant(int(i))) {
                        key.const_exps.push_back(e);
                        key.cnst += std::abs(e);
                    } else {
                        key.exps.push_back(e > 0 ? 2 * e - 1 : -2 * e);
                        key.nonconst += std::abs(e);
                        key.distinct += e != 0;
                    }
                }
                found.push_back({key, CandidateArg{s, v, RatFunc(N * MPoly(Rational(s)), D)}});
            }
        }
    std::stable_sort(found.begin(), found.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<CandidateArg> out;
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
}

std::vector<RatFunc> s3_orbit(const RatFunc& R) {
    RatFunc one(1);
    return {R, one - R, R.inverse(), (one - R).inverse(), one - R.inverse(), R / (R - one)};
}

std::vector<std::vector<RatFunc>> candidate_args_depthk(const std::vector<RatFunc>& R1, int k,
                                                        const Alphabet& A) {
    if (k < 2) throw PreconditionViolated("depth must be >= 2");
    size_t n = R1.size();
    std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            RatFunc d = R1[i] - R1[j];
            ok[i][j] = ok[j][i] = !d.is_zero() && try_decompose(d, A).has_value();
        }
    std::vector<std::vector<RatFunc>> out;
    std::vector<size_t> cur;
    std::function<void()> rec = [&] {
        if (cur.size() == size_t(k)) {
            std::vector<RatFunc> t;
            for (size_t i : cur) t.push_back(R1[i]);
            out.push_back(std::move(t));
            return;
        }
        for (size_t i = 0; i < n; ++i) {
            bool good = true;
            for (size_t j : cur) good = good && ok[i][j];
            if (!good) continue;
            cur.push_back(i);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

std::string multvector_to_string(const MultVector& v, const Alphabet& A) {
    if (v.empty()) return "1";
    std::string s;
    for (const auto& [i, e] : v) {
        if (!s.empty()) s += "*";
        std::string n = A.name(i);
        if (n.find_first_of("+-*/") != std::string::npos) n = "(" + n + ")";
        s += n;
        if (e != 1) s += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
    }
    return s;
}

}  // namespace mplsym
