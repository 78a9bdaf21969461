#include "mplsym/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mplsym {

namespace {

thread_local int g_max_terms = 0;
thread_local int g_hoelder_depth = 0;

unsigned current_digits() { return Real::default_precision(); }

void note_terms(int n) { g_max_terms = std::max(g_max_terms, n); }

Real rpow(const Real& b, int n) {
    Real r = 1;
    Real p = b;
    for (unsigned e = unsigned(n); e; e >>= 1) {
        if (e & 1) r *= p;
        p *= p;
    }
    return r;
}

Integer to_integer(const Real& v) {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v.backend().data(), MPFR_RNDN);
    return z;
}

Real factorial(int n) {
    Real r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

int terms_for_ratio(double r, int extra = 10) {
    double d = double(current_digits()) * std::log(10.0);
    return int(std::ceil(d / -std::log(r) * 1.05)) + extra;
}

}  // namespace

Precision::Precision(int digits) : saved_(Real::default_precision()) {
    Real::default_precision(unsigned(digits + kGuardDigits));
}

Precision::~Precision() { Real::default_precision(saved_); }

int truncation_order() { return g_max_terms; }
void reset_truncation_order() { g_max_terms = 0; }

Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

std::string format_real(const Real& v, int digits) { return v.str(digits); }

Rational bernoulli(int n) {
    static std::vector<Rational> cache = {Rational(1)};
    while (int(cache.size()) <= n) {
        int m = int(cache.size());
        Rational s = 0;
        Integer binom = 1;
        for (int k = 0; k < m; ++k) {
            s += binom * cache[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        cache.push_back(-s / (m + 1));
    }
    return cache[n];
}

Real zeta_value(int n) {
    if (n == 1) throw DivergentSpec("zeta(1) diverges");
    if (n <= 0) {
        int m = -n;
        Rational v = bernoulli(m + 1) / (m + 1);
        if (m % 2) v = -v;
        return to_real(v);
    }
    static thread_local std::map<std::pair<unsigned, int>, Real> cache;
    auto key = std::make_pair(current_digits(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Real r;
    mpfr_zeta_ui(r.backend().data(), unsigned(n), MPFR_RNDN);
    cache[key] = r;
    return r;
}

Real constant_value(Constant c) {
    static thread_local std::map<std::pair<unsigned, int>, Real> cache;
    auto key = std::make_pair(current_digits(), int(c));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Real r;
    switch (c) {
        case Constant::Pi:
            mpfr_const_pi(r.backend().data(), MPFR_RNDN);
            break;
        case Constant::Ln2:
            mpfr_const_log2(r.backend().data(), MPFR_RNDN);
            break;
        case Constant::Zeta3:
            r = zeta_value(3);
            break;
        case Constant::Li4Half:
            r = polylog(4, Rational(1, 2));
            break;
    }
    cache[key] = r;
    return r;
}

namespace {

Real polylog_series(int n, const Real& z, double absz) {
    int N = terms_for_ratio(absz);
    note_terms(N);
    Real s = 0, p = 1;
    for (int k = 1; k <= N; ++k) {
        p *= z;
        s += p / rpow(Real(k), n);
    }
    return s;
}

// Expansion in mu = log z, valid for |mu| < 2 pi.
Real polylog_logseries(int n, const Real& z) {
    Real mu = log(z);
    double amu = std::fabs(mu.convert_to<double>());
    int K = n + int(std::ceil(double(current_digits() + 5) * std::log(10.0) /
                              std::log(2 * M_PI / std::max(amu, 1e-300)))) + 2;
    note_terms(K);
    Real s = 0, p = 1;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) p *= mu / k;
        if (k == n - 1) {
            Real h = 0;
            for (int i = 1; i < n; ++i) h += Real(1) / i;
            s += p * (h - log(-mu));
        } else {
            int arg = n - k;
            if (arg < -1 && (-arg) % 2 == 0) continue;
            s += zeta_value(arg) * p;
        }
    }
    return s;
}

}  // namespace

Real polylog(int n, const Real& z) {
    if (n < 1) throw PreconditionViolated("polylog index must be positive");
    if (z == 0) return 0;
    if (n == 1) {
        if (z >= 1) throw OutOfRegion("log(1-z) needs z < 1");
        return -log1p(-z);
    }
    if (z == 1) return zeta_value(n);
    if (z > 1) throw OutOfRegion("Li_n(z) is complex for z > 1");
    double zd = z.convert_to<double>();
    if (std::fabs(zd) <= 0.5) return polylog_series(n, z, std::fabs(zd));
    if (z > 0) return polylog_logseries(n, z);
    if (z >= -1) return polylog(n, z * z) / rpow(Real(2), n - 1) - polylog(n, -z);
    // Inversion z -> 1/z for z < -1.
    Real L = log(-z);
    Real s = -rpow(L, n) / factorial(n);
    for (int r = 1; 2 * r <= n; ++r) {
        Real eta = (1 - Real(1) / rpow(Real(2), 2 * r - 1)) * zeta_value(2 * r);
        s -= 2 * rpow(L, n - 2 * r) / factorial(n - 2 * r) * eta;
    }
    Real inv = polylog(n, 1 / z);
    return n % 2 ? Real(s + inv) : Real(s - inv);
}

Real polylog(int n, const Rational& z) { return polylog(n, to_real(z)); }

Real li_series(const std::vector<int>& m, const std::vector<Rational>& x) {
    size_t k = m.size();
    for (const auto& v : x)
        if (v == 0) return 0;
    // Suffix products bound the summand decay; inner partial products set
    // how much cancellation headroom is needed.
    double r = 0, grow = 1;
    for (size_t i = 0; i < k; ++i) {
        Rational p = 1;
        for (size_t j = i; j < k; ++j) {
            p *= x[j];
            double a = std::fabs(p.get_d());
            if (j + 1 == k)
                r = std::max(r, a);
            else
                grow = std::max(grow, a);
        }
    }
    if (r >= 1) throw OutOfRegion("nested sum does not converge geometrically");
    int N = terms_for_ratio(r, 10 + 10 * int(k));
    note_terms(N);
    int extra = grow > 1 ? int(std::ceil(N * std::log10(grow))) + 5 : 0;
    Precision guard(int(current_digits()) + extra - kGuardDigits);

    std::vector<Real> prev(N + 1, Real(1));
    for (size_t j = 0; j < k; ++j) {
        Real xj = to_real(x[j]);
        std::vector<Real> cur(N + 1, Real(0));
        Real p = 1, acc = 0;
        for (int n = 1; n <= N; ++n) {
            p *= xj;
            Real inner = j == 0 ? Real(1) : prev[n - 1];
            acc += p / rpow(Real(n), m[j]) * inner;
            cur[n] = acc;
        }
        prev = std::move(cur);
    }
    return prev[N];
}

Real g_hoelder(const std::vector<Rational>& a, const Rational& q) {
    size_t n = a.size();
    Real s = 0;
    ++g_hoelder_depth;
    try {
        for (size_t k = 0; k <= n; ++k) {
            std::vector<Rational> left, right(a.begin() + k, a.end());
            for (size_t i = k; i-- > 0;) left.push_back(1 - a[i]);
            Real t = g_numeric(left, 1 - q) * g_numeric(right, q);
            s += k % 2 ? Real(-t) : t;
        }
    } catch (...) {
        --g_hoelder_depth;
        throw;
    }
    --g_hoelder_depth;
    return s;
}

Real g_numeric(const std::vector<Rational>& a, const Rational& x) {
    size_t n = a.size();
    if (n == 0) return 1;
    bool all_zero = std::all_of(a.begin(), a.end(), [](const Rational& v) { return v == 0; });
    if (all_zero) {
        if (x == 0) throw DivergentSpec("G(0,...,0;0) diverges");
        if (x < 0) throw OutOfRegion("G(0,...,0;x) is complex for x < 0");
        return rpow(log(to_real(x)), int(n)) / factorial(int(n));
    }
    if (x == 0) return 0;
    if (a.back() == 0) {
        std::vector<RatFunc> w;
        for (const auto& v : a) w.push_back(RatFunc(v));
        Real s = 0;
        for (const Monom& m : expand(g_extract_trailing_zeros(w, RatFunc(x)))) {
            Real t = to_real(m.coeff);
            for (const auto& f : m.factors) {
                std::vector<Rational> sub;
                for (const auto& v : f->args) sub.push_back(v.constant_value());
                t *= g_numeric(sub, x);
            }
            s += t;
        }
        return s;
    }
    std::vector<Rational> b;
    for (const auto& v : a) b.push_back(v / x);
    if (b[0] == 1) throw DivergentSpec("G(1,...;1) diverges");

    std::vector<int> blocks;
    std::vector<Rational> nz;
    int zeros = 0;
    for (const auto& v : b) {
        if (v == 0) {
            ++zeros;
            continue;
        }
        blocks.push_back(zeros + 1);
        nz.push_back(v);
        zeros = 0;
    }
    size_t k = nz.size();
    if (k == 1) return -polylog(int(n), 1 / nz[0]);

    double r = 0;
    for (const auto& v : nz) r = std::max(r, 1 / std::fabs(v.get_d()));
    if (r <= 0.9 + 1e-12) {
        std::vector<int> m(k);
        std::vector<Rational> xs(k);
        for (size_t j = 1; j <= k; ++j) {
            m[k - j] = blocks[j - 1];
            xs[k - j] = j == 1 ? Rational(1 / nz[0]) : Rational(nz[j - 2] / nz[j - 1]);
        }
        Real v = li_series(m, xs);
        return k % 2 ? Real(-v) : v;
    }
    if (g_hoelder_depth == 0) {
        double best = 1e300;
        Rational bq;
        for (int j = 1; j < 200; ++j) {
            double q = j / 200.0, r1 = 0, r2 = 0;
            for (const auto& v : b) {
                if (v != 0) r2 = std::max(r2, q / std::fabs(v.get_d()));
                if (v != 1) r1 = std::max(r1, (1 - q) / std::fabs(Rational(1 - v).get_d()));
            }
            double sc = std::max(r1, r2);
            if (sc < best) {
                best = sc;
                bq = Rational(j, 200);
            }
        }
        if (best <= 0.9) return g_hoelder(b, bq);
    }
    throw OutOfRegion("no convergent representation for G at this point");
}

Real li_numeric(const std::vector<int>& m, const std::vector<Rational>& x) {
    size_t k = m.size();
    for (const auto& v : x)
        if (v == 0) return 0;
    if (k == 1) return polylog(m[0], x[0]);
    std::vector<Rational> g;
    Rational prod = 1;
    for (size_t j = k; j-- > 0;) {
        prod *= x[j];
        for (int z = 1; z < m[j]; ++z) g.push_back(0);
        g.push_back(1 / prod);
    }
    Real v = g_numeric(g, 1);
    return k % 2 ? Real(-v) : v;
}

Real eval_expr(const ExprPtr& e, const std::map<std::string, Rational>& point) {
    auto ev = [&](const RatFunc& f) { return eval_rat(f, point); };
    switch (e->kind) {
        case Kind::G: {
            std::vector<Rational> a;
            for (const auto& v : e->args) a.push_back(ev(v));
            return g_numeric(a, ev(e->arg));
        }
        case Kind::H:
        case Kind::Nielsen: {
            std::vector<int> idx = e->index;
            if (e->kind == Kind::Nielsen) {
                idx.assign(e->index[0], 0);
                idx.insert(idx.end(), e->index[1], 1);
            }
            std::vector<Rational> a;
            int ones = 0;
            for (int v : idx) {
                a.push_back(v);
                ones += v == 1;
            }
            Real g = g_numeric(a, ev(e->arg));
            return ones % 2 ? Real(-g) : g;
        }
        case Kind::Li: {
            std::vector<Rational> x;
            for (const auto& v : e->args) x.push_back(ev(v));
            return li_numeric(e->index, x);
        }
        case Kind::Log: {
            Rational v = ev(e->arg);
            if (v <= 0) throw OutOfRegion("log of non-positive value " + v.get_str());
            return log(to_real(v));
        }
        case Kind::Const:
            return constant_value(e->constant);
        case Kind::Scalar:
            return to_real(e->scalar);
        case Kind::Sum: {
            Real s = 0;
            for (const auto& c : e->children) s += eval_expr(c, point);
            return s;
        }
        case Kind::Product: {
            Real s = 1;
            for (const auto& c : e->children) s *= eval_expr(c, point);
            return s;
        }
        case Kind::Power:
            return rpow(eval_expr(e->children[0], point), e->exponent);
    }
    return 0;
}

namespace {

void collect_vars(const ExprPtr& e, std::set<std::string>& out) {
    auto add = [&](const RatFunc& f) {
        if (auto r = f.ring())
            for (const auto& v : r->vars)
                if (f.derivative(r->index(v)) != RatFunc(0)) out.insert(v);
    };
    for (const auto& a : e->args) add(a);
    if (e->kind == Kind::G || e->kind == Kind::H || e->kind == Kind::Nielsen || e->kind == Kind::Log)
        add(e->arg);
    for (const auto& c : e->children) collect_vars(c, out);
}

}  // namespace

Real eval_mpl(const ExprPtr& e, const Rational& x, int digits) {
    Precision guard(digits);
    std::set<std::string> vars;
    collect_vars(e, vars);
    if (vars.size() > 1) throw PreconditionViolated("eval_mpl expects at most one variable");
    std::map<std::string, Rational> point;
    for (const auto& v : vars) point[v] = x;
    return eval_expr(e, point);
}

std::optional<Rational> rational_reconstruct(const Real& v, const Integer& maxden, int digits) {
    Real tol = pow(Real(10), -(digits - 10));
    // Continued-fraction convergents p/q of v.
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Real rest = v;
    for (int it = 0; it < 200; ++it) {
        Real fl = floor(rest);
        Integer a = to_integer(fl);
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > maxden) break;
        Rational cand(p2, q2);
        cand.canonicalize();
        if (abs(v - to_real(cand)) <= tol) return cand;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Real frac = rest - fl;
        if (frac == 0) break;
        rest = 1 / frac;
    }
    return std::nullopt;
}

std::optional<std::vector<Integer>> integer_relation(const std::vector<Real>& v, int digits,
                                                     const Integer& maxcoeff) {
    size_t n = v.size();
    if (n == 0) return std::nullopt;
    int scale_digits = std::max(10, digits - 5);
    Real C = pow(Real(10), scale_digits);
    // Basis rows (e_i, round(C v_i)).
    std::vector<std::vector<Integer>> B(n, std::vector<Integer>(n + 1, 0));
    for (size_t i = 0; i < n; ++i) {
        B[i][i] = 1;
        Real s = round(C * v[i]);
        B[i][n] = to_integer(s);
    }
    Precision guard(2 * scale_digits + 20);
    auto to_r = [](const Integer& z) {
        Real r;
        mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
        return r;
    };
    std::vector<std::vector<Real>> mu(n, std::vector<Real>(n, 0));
    std::vector<Real> Bn(n);
    std::vector<std::vector<Real>> bstar(n, std::vector<Real>(n + 1));
    auto gram_schmidt = [&]() {
        for (size_t i = 0; i < n; ++i) {
            for (size_t c = 0; c <= n; ++c) bstar[i][c] = to_r(B[i][c]);
            for (size_t j = 0; j < i; ++j) {
                Real d = 0;
                for (size_t c = 0; c <= n; ++c) d += to_r(B[i][c]) * bstar[j][c];
                mu[i][j] = Bn[j] == 0 ? Real(0) : d / Bn[j];
                for (size_t c = 0; c <= n; ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
            }
            Bn[i] = 0;
            for (size_t c = 0; c <= n; ++c) Bn[i] += bstar[i][c] * bstar[i][c];
        }
    };
    gram_schmidt();
    size_t k = 1;
    Real delta = Real(99) / 100;
    int guard_iter = 0;
    while (k < n && guard_iter++ < 100000) {
        for (size_t j = k; j-- > 0;) {
            Real r = round(mu[k][j]);
            if (r != 0) {
                Integer q = to_integer(r);
                for (size_t c = 0; c <= n; ++c) B[k][c] -= q * B[j][c];
                gram_schmidt();
            }
        }
        if (Bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * Bn[k - 1]) {
            ++k;
        } else {
            std::swap(B[k], B[k - 1]);
            gram_schmidt();
            k = std::max<size_t>(k - 1, 1);
        }
    }
    std::optional<std::vector<Integer>> best;
    Integer bestnorm = 0;
    for (const auto& row : B) {
        if (row[0] == 0) continue;
        Integer mx = 0;
        for (size_t i = 0; i < n; ++i) mx = std::max(mx, Integer(abs(row[i])));
        if (mx > maxcoeff) continue;
        Real resid = 0;
        for (size_t i = 0; i < n; ++i) resid += to_r(row[i]) * v[i];
        if (abs(resid) > pow(Real(10), -(scale_digits / 2))) continue;
        if (!best || mx < bestnorm) {
            std::vector<Integer> out(row.begin(), row.begin() + n);
            if (out[0] < 0)
                for (auto& z : out) z = -z;
            best = out;
            bestnorm = mx;
        }
    }
    return best;
}

}  // namespace mplsym
