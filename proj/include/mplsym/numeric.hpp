#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "mplsym/mpl.hpp"

namespace mplsym {

using Real = boost::multiprecision::mpfr_float;

// Sets the working precision (decimal digits, plus guard digits) for the
// lifetime of the object and restores the previous one afterwards.
class Precision {
public:
    explicit Precision(int digits);
    ~Precision();
    Precision(const Precision&) = delete;
    Precision& operator=(const Precision&) = delete;

private:
    unsigned saved_;
};

constexpr int kGuardDigits = 15;

Real to_real(const Rational& q);
std::string format_real(const Real& v, int digits);

Real constant_value(Constant c);
Real zeta_value(int n);
Rational bernoulli(int n);

// Classical polylogarithm for real z <= 1.
Real polylog(int n, const Real& z);
Real polylog(int n, const Rational& z);

// G(a;x) for rational singularities and argument on the real line.
// Throws OutOfRegion if neither the nested sums nor a Hoelder split
// converge with ratio <= 9/10, and DivergentSpec for G(1,...;1).
Real g_numeric(const std::vector<Rational>& a, const Rational& x);
// Li_{m_1..m_k}(x_1..x_k) with n_1 < ... < n_k summation.
Real li_numeric(const std::vector<int>& m, const std::vector<Rational>& x);
// Truncated nested sum without any region check; ratio r bounds the terms.
Real li_series(const std::vector<int>& m, const std::vector<Rational>& x);
// Hoelder convolution of G(a;1) split at 1/p.
Real g_hoelder(const std::vector<Rational>& a, const Rational& inv_p);

Real eval_expr(const ExprPtr& e, const std::map<std::string, Rational>& point);
// Single-variable convenience: the expression's only variable set to x.
Real eval_mpl(const ExprPtr& e, const Rational& x, int digits);

// Largest truncation order used by nested sums since the last reset.
int truncation_order();
void reset_truncation_order();

std::optional<Rational> rational_reconstruct(const Real& v, const Integer& maxden, int digits);

// Integer vector m with m[0] != 0 and |sum m_i v_i| tiny, found by LLL
// on the scaled lattice. Returns nullopt if no small relation exists.
std::optional<std::vector<Integer>> integer_relation(const std::vector<Real>& v, int digits,
                                                     const Integer& maxcoeff);

}  // namespace mplsym
