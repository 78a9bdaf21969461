#include "mplsym/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "mplsym/lexer.hpp"

namespace mplsym {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
    size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    std::string t = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    if (t.empty() || t.find_first_not_of("+-0123456789/") != std::string::npos)
        throw ParseError("bad rational '" + s + "'");
    if (t[0] == '+') t.erase(0, 1);
    Rational q;
    if (q.set_str(t, 10) != 0) throw ParseError("bad rational '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

int Ring::index(const std::string& name) const {
    auto it = std::find(vars.begin(), vars.end(), name);
    return it == vars.end() ? -1 : int(it - vars.begin());
}

RingPtr make_ring(std::vector<std::string> vars) {
    auto r = std::make_shared<Ring>();
    r->vars = std::move(vars);
    return r;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->vars == b->vars;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da > db;
    return a > b;
}

static Rational qpow(const Rational& q, unsigned e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

MPoly::MPoly(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
}

MPoly MPoly::constant(RingPtr ring, const Rational& c) {
    MPoly p(std::move(ring));
    if (c != 0) p.terms_.emplace(p.zero_monomial(), c);
    return p;
}

MPoly MPoly::variable(RingPtr ring, int i) {
    MPoly p(std::move(ring));
    Monomial m = p.zero_monomial();
    m.at(i) = 1;
    p.terms_.emplace(m, Rational(1));
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int e : terms_.begin()->first)
        if (e) return false;
    return true;
}

Rational MPoly::constant_value() const {
    if (terms_.empty()) return 0;
    for (const auto& [m, c] : terms_) {
        bool zero = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
        if (zero) return c;
    }
    return 0;
}

Rational MPoly::leading_coeff() const {
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

const Monomial& MPoly::leading_monomial() const { return terms_.begin()->first; }

int MPoly::degree(int var) const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        if (var < int(m.size())) d = std::max(d, m[var]);
    return d;
}

int MPoly::total_degree() const {
    if (terms_.empty()) return 0;
    int d = 0;
    for (int e : terms_.begin()->first) d += e;
    return d;
}

MPoly MPoly::lifted(const RingPtr& ring) const {
    if (same_ring(ring_, ring)) {
        MPoly p = *this;
        p.ring_ = ring;
        return p;
    }
    MPoly p(ring);
    std::vector<int> map(nvars(), -1);
    for (size_t i = 0; i < nvars(); ++i) map[i] = ring ? ring->index(ring_->vars[i]) : -1;
    for (const auto& [m, c] : terms_) {
        Monomial n = p.zero_monomial();
        for (size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (map[i] < 0)
                throw RingMismatch("variable " + ring_->vars[i] + " missing in target ring");
            n[map[i]] = m[i];
        }
        p.terms_.emplace(n, c);
    }
    return p;
}

RingPtr MPoly::unify(const MPoly& a, const MPoly& b) {
    if (!a.ring_) return b.ring_;
    if (!b.ring_) return a.ring_;
    if (same_ring(a.ring_, b.ring_)) return a.ring_;
    throw RingMismatch("polynomials over different variable lists");
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    RingPtr r = unify(*this, o);
    if (!same_ring(ring_, r) || ring_ != r) *this = lifted(r);
    if (same_ring(o.ring_, r) && o.ring_) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
    } else {
        for (const auto& [m, c] : o.lifted(r).terms_) add_term(m, c);
    }
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
    RingPtr r = MPoly::unify(a, b);
    MPoly x = a.lifted(r), y = b.lifted(r);
    MPoly p(r);
    Monomial m(p.nvars());
    for (const auto& [ma, ca] : x.terms_)
        for (const auto& [mb, cb] : y.terms_) {
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            p.add_term(m, ca * cb);
        }
    return p;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

MPoly MPoly::pow(unsigned n) const {
    MPoly result = MPoly::constant(ring_, 1), base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

MPoly MPoly::derivative(int var) const {
    MPoly p(ring_);
    for (const auto& [m, c] : terms_) {
        if (var >= int(m.size()) || m[var] == 0) continue;
        Monomial n = m;
        n[var] -= 1;
        p.add_term(n, c * m[var]);
    }
    return p;
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
    if (point.size() < nvars()) throw PreconditionViolated("evaluation point too short");
    Rational s = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i]) t *= qpow(point[i], m[i]);
        s += t;
    }
    return s;
}

MPoly MPoly::mul_var_pow(int var, int k) const {
    MPoly p(ring_);
    for (const auto& [m, c] : terms_) {
        Monomial n = m;
        n.at(var) += k;
        p.terms_.emplace(n, c);
    }
    return p;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& b) const {
    if (b.is_zero()) throw PreconditionViolated("division by zero polynomial");
    RingPtr ring = unify(*this, b);
    MPoly r = lifted(ring), d = b.lifted(ring), q(ring);
    const Monomial& lm = d.leading_monomial();
    Rational lc = d.leading_coeff();
    size_t n = r.nvars();
    while (!r.is_zero()) {
        const Monomial& rm = r.leading_monomial();
        Monomial t(n);
        for (size_t i = 0; i < n; ++i) {
            t[i] = rm[i] - lm[i];
            if (t[i] < 0) return std::nullopt;
        }
        Rational c = r.leading_coeff() / lc;
        q.add_term(t, c);
        for (const auto& [m, v] : d.terms_) {
            Monomial s(n);
            for (size_t i = 0; i < n; ++i) s[i] = m[i] + t[i];
            r.add_term(s, -c * v);
        }
    }
    return q;
}

std::vector<MPoly> MPoly::coeffs_in(int var) const {
    std::vector<MPoly> out(degree(var) + 1, MPoly(ring_));
    for (const auto& [m, c] : terms_) {
        int d = var < int(m.size()) ? m[var] : 0;
        Monomial n = m;
        if (d) n[var] = 0;
        out[d].add_term(n, c);
    }
    return out;
}

MPoly MPoly::lcoeff_in(int var) const { return coeffs_in(var).back(); }

Rational MPoly::content() const {
    if (terms_.empty()) return 1;
    Integer g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational r(abs(g), l);
    r.canonicalize();
    if (leading_coeff() < 0) r = -r;
    return r;
}

MPoly MPoly::primitive() const {
    MPoly p = *this;
    p *= Rational(1) / content();
    return p;
}

MPoly MPoly::monic() const {
    if (terms_.empty()) return *this;
    MPoly p = *this;
    p *= Rational(1) / leading_coeff();
    return p;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool is_const = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
        Rational a = abs(c);
        if (c < 0)
            os << "-";
        else if (!first)
            os << "+";
        first = false;
        bool need_star = false;
        if (is_const || a != 1) {
            os << a.get_str();
            need_star = true;
        }
        for (size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (need_star) os << "*";
            os << ring_->vars[i];
            if (m[i] > 1) os << "^" << m[i];
            need_star = true;
        }
    }
    return os.str();
}

std::string MPoly::display() const { return to_string(); }

bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    RingPtr r = MPoly::unify(a, b);
    if (a.ring_ == r && b.ring_ == r) return a.terms_ == b.terms_;
    return a.lifted(r).terms_ == b.lifted(r).terms_;
}

bool operator<(const MPoly& a, const MPoly& b) {
    RingPtr r = MPoly::unify(a, b);
    MPoly x = a.lifted(r), y = b.lifted(r);
    GrlexGreater gt;
    auto i = x.terms_.begin(), j = y.terms_.begin();
    for (; i != x.terms_.end() && j != y.terms_.end(); ++i, ++j) {
        if (gt(i->first, j->first)) return true;
        if (gt(j->first, i->first)) return false;
        if (i->second != j->second) return i->second < j->second;
    }
    return i == x.terms_.end() && j != y.terms_.end();
}

namespace {

int main_variable(const MPoly& a, const MPoly& b) {
    size_t n = std::max(a.nvars(), b.nvars());
    for (int v = int(n) - 1; v >= 0; --v)
        if (a.depends_on(v) || b.depends_on(v)) return v;
    return -1;
}

MPoly exact_quotient(const MPoly& a, const MPoly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw PreconditionViolated("internal: inexact division in gcd");
    return *q;
}

MPoly gcd_impl(const MPoly& a, const MPoly& b);

MPoly content_in(const MPoly& p, int var) {
    MPoly g;
    for (const MPoly& c : p.coeffs_in(var)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_impl(g, c);
        if (g.is_constant()) return MPoly::constant(p.ring(), 1);
    }
    return g;
}

MPoly prem(MPoly r, const MPoly& b, int var) {
    int db = b.degree(var);
    MPoly lcb = b.lcoeff_in(var);
    while (!r.is_zero() && r.degree(var) >= db) {
        int dr = r.degree(var);
        MPoly lcr = r.lcoeff_in(var);
        r = lcb * r - (lcr * b).mul_var_pow(var, dr - db);
    }
    return r;
}

MPoly gcd_impl(const MPoly& a0, const MPoly& b0) {
    if (a0.is_zero()) return b0.monic();
    if (b0.is_zero()) return a0.monic();
    RingPtr ring = a0.ring() ? a0.ring() : b0.ring();
    if (a0.is_constant() || b0.is_constant()) return MPoly::constant(ring, 1);
    int v = main_variable(a0, b0);
    MPoly a = a0.primitive(), b = b0.primitive();
    if (!a.depends_on(v)) return gcd_impl(a, content_in(b, v));
    if (!b.depends_on(v)) return gcd_impl(content_in(a, v), b);
    MPoly ca = content_in(a, v), cb = content_in(b, v);
    MPoly c = gcd_impl(ca, cb);
    MPoly pa = exact_quotient(a, ca), pb = exact_quotient(b, cb);
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
    while (true) {
        MPoly r = prem(pa, pb, v);
        if (r.is_zero()) break;
        if (!r.depends_on(v)) {
            pb = MPoly::constant(ring, 1);
            break;
        }
        pa = pb;
        pb = exact_quotient(r, content_in(r, v)).primitive();
    }
    if (pb.depends_on(v)) pb = exact_quotient(pb, content_in(pb, v));
    return (c * pb).monic();
}

}  // namespace

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
    MPoly g = gcd_impl(a, b);
    if (g.is_zero()) return g;
    return g.primitive();
}

RatFunc::RatFunc(const MPoly& num, const MPoly& den) {
    if (den.is_zero()) throw PoleAtPoint("zero denominator");
    MPoly n = num, d = den;
    if (!n.is_zero() && !(n.is_constant() || d.is_constant())) {
        MPoly g = gcd_impl(n, d);
        if (!g.is_constant()) {
            n = exact_quotient(n, g);
            d = exact_quotient(d, g);
        }
    }
    if (n.is_zero()) d = MPoly(1);
    Rational lc = d.leading_coeff();
    n *= Rational(1) / lc;
    d *= Rational(1) / lc;
    RingPtr r = n.ring() ? n.ring() : d.ring();
    num_ = n.lifted(r);
    den_ = d.lifted(r);
}

RingPtr RatFunc::ring() const { return num_.ring() ? num_.ring() : den_.ring(); }

Rational RatFunc::constant_value() const {
    return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
    RatFunc f = *this;
    f.num_ = -f.num_;
    return f;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw PoleAtPoint("division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::inverse() const { return RatFunc(1) / *this; }

RatFunc RatFunc::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    RatFunc f;
    f.num_ = num_.pow(n);
    f.den_ = den_.pow(n);
    if (f.num_.is_zero() && n == 0) f.num_ = MPoly(1);
    return f;
}

RatFunc RatFunc::derivative(int var) const {
    return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

Rational RatFunc::eval(const std::vector<Rational>& point) const {
    Rational d = den_.eval(point);
    if (d == 0) throw PoleAtPoint("denominator " + den_.to_string() + " vanishes");
    return num_.eval(point) / d;
}

RatFunc RatFunc::lifted(const RingPtr& ring) const {
    RatFunc f = *this;
    f.num_ = num_.lifted(ring);
    f.den_ = den_.lifted(ring);
    return f;
}

std::string RatFunc::to_string() const {
    Rational cn = num_.content(), cd = den_.content();
    Rational r = cn / cd;
    MPoly n = num_.primitive(), d = den_.primitive();
    n *= Rational(r.get_num());
    d *= Rational(r.get_den());
    if (d.is_constant() && d.constant_value() == 1) return n.to_string();
    std::string ns = n.to_string();
    if (n.terms().size() > 1) ns = "(" + ns + ")";
    std::string ds = d.to_string();
    bool bare = d.terms().size() == 1 && (d.leading_coeff() == 1 || d.is_constant());
    if (!bare) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

std::string RatFunc::display() const { return to_string(); }

bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
}

bool operator<(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ < b.num_;
    return a.den_ < b.den_;
}

RatFunc partial_derivative(const RatFunc& f, const std::string& var) {
    RingPtr r = f.ring();
    int i = r ? r->index(var) : -1;
    if (i < 0) return RatFunc(0);
    return f.derivative(i);
}

Rational eval_rat(const RatFunc& f, const std::map<std::string, Rational>& point) {
    RingPtr r = f.ring();
    std::vector<Rational> pt(r ? r->size() : 0);
    for (size_t i = 0; i < pt.size(); ++i) {
        auto it = point.find(r->vars[i]);
        if (it == point.end()) {
            if (f.num().depends_on(int(i)) || f.den().depends_on(int(i)))
                throw PreconditionViolated("no value for variable " + r->vars[i]);
            continue;
        }
        pt[i] = it->second;
    }
    return f.eval(pt);
}

namespace {

class RatParser {
public:
    RatParser(const std::string& text, RingPtr ring) : lx_(text), ring_(std::move(ring)) {}

    RatFunc parse() {
        RatFunc f = expr();
        if (!lx_.at_end()) lx_.fail("unexpected trailing input");
        return f;
    }

private:
    RatFunc expr() {
        RatFunc f = term();
        while (true) {
            if (lx_.accept("+"))
                f = f + term();
            else if (lx_.accept("-"))
                f = f - term();
            else
                return f;
        }
    }
    RatFunc term() {
        RatFunc f = unary();
        while (true) {
            if (lx_.accept("*"))
                f = f * unary();
            else if (lx_.accept("/"))
                f = f / unary();
            else
                return f;
        }
    }
    RatFunc unary() {
        if (lx_.accept("-")) return -unary();
        if (lx_.accept("+")) return unary();
        return power();
    }
    RatFunc power() {
        RatFunc base = atom();
        if (!lx_.accept("^")) return base;
        int sign = 1;
        bool paren = lx_.accept("(");
        if (lx_.accept("-")) sign = -1;
        if (lx_.peek().kind != Tok::Number) lx_.fail("expected integer exponent");
        int e = std::stoi(lx_.next().text) * sign;
        if (paren) lx_.expect(")");
        return base.pow(e);
    }
    RatFunc atom() {
        const Token& t = lx_.peek();
        if (t.kind == Tok::Number) return RatFunc(Rational(Integer(lx_.next().text)));
        if (t.kind == Tok::Ident) {
            int i = ring_ ? ring_->index(t.text) : -1;
            if (i < 0) lx_.fail("unknown variable");
            lx_.next();
            return RatFunc(MPoly::variable(ring_, i));
        }
        if (lx_.accept("(")) {
            RatFunc f = expr();
            lx_.expect(")");
            return f;
        }
        lx_.fail("expected number, variable or '('");
    }

    Lexer lx_;
    RingPtr ring_;
};

}  // namespace

RatFunc parse_ratfunc(const std::string& text, const RingPtr& ring) {
    RatFunc f = RatParser(text, ring).parse();
    return ring ? f.lifted(ring) : f;
}

std::vector<Integer> default_prime_point(size_t nvars) {
    std::vector<Integer> pts;
    Integer p = 100;
    for (size_t i = 0; i < nvars; ++i) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        pts.push_back(p);
    }
    return pts;
}

bool prime_substitution_filter(const MPoly& candidate,
                               const std::vector<Integer>& alphabet_values,
                               const std::vector<Integer>& point) {
    std::set<Integer> seen;
    for (const Integer& v : alphabet_values) {
        if (v == 0) throw BadPrimePoint("a letter vanishes at the prime point");
        if (!seen.insert(abs(v)).second)
            throw BadPrimePoint("two letters take the same value at the prime point");
    }
    if (candidate.is_zero()) return true;
    std::vector<Rational> pt(point.begin(), point.end());
    Rational value = candidate.primitive().eval(pt);
    Integer n = value.get_num();
    for (const Integer& v : alphabet_values) {
        if (abs(v) <= 1) continue;
        if (mpz_divisible_p(n.get_mpz_t(), v.get_mpz_t())) return true;
    }
    return false;
}

bool prime_substitution_filter(const MPoly& candidate,
                               const std::vector<Integer>& alphabet_values) {
    return prime_substitution_filter(candidate, alphabet_values,
                                     default_prime_point(candidate.nvars()));
}

}  // namespace mplsym
