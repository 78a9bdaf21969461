#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mplsym/errors.hpp"

namespace mplsym {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// Ordered list of variable names shared by polynomials of one session.
struct Ring {
    std::vector<std::string> vars;
    int index(const std::string& name) const;  // -1 if absent
    size_t size() const { return vars.size(); }
};
using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(std::vector<std::string> vars);
bool same_ring(const RingPtr& a, const RingPtr& b);

using Monomial = std::vector<int>;

// Graded lexicographic, largest first.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial over Q. A null ring means the polynomial
// is a constant that adopts the ring of whatever it is combined with.
class MPoly {
public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    MPoly() = default;
    explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {}
    MPoly(const Rational& c);  // NOLINT: constants convert implicitly
    MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT

    static MPoly constant(RingPtr ring, const Rational& c);
    static MPoly variable(RingPtr ring, int i);

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    size_t nvars() const { return ring_ ? ring_->size() : 0; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // valid when is_constant()
    Rational leading_coeff() const;
    const Monomial& leading_monomial() const;
    int degree(int var) const;
    int total_degree() const;
    bool depends_on(int var) const { return degree(var) > 0; }

    MPoly lifted(const RingPtr& ring) const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const Rational& c);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly pow(unsigned n) const;

    MPoly derivative(int var) const;
    Rational eval(const std::vector<Rational>& point) const;
    MPoly mul_var_pow(int var, int k) const;

    // Exact quotient, or nullopt when b does not divide *this.
    std::optional<MPoly> divide_exact(const MPoly& b) const;

    // Coefficients as polynomials in the other variables, index = power of var.
    std::vector<MPoly> coeffs_in(int var) const;
    MPoly lcoeff_in(int var) const;

    // Positive rational c such that *this / c has coprime integer coefficients
    // with positive leading coefficient (sign folded into c).
    Rational content() const;
    MPoly primitive() const;
    MPoly monic() const;

    std::string to_string() const;
    friend bool operator==(const MPoly& a, const MPoly& b);
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
    friend bool operator<(const MPoly& a, const MPoly& b);

    // Readable form with ascending terms and a positive constant, e.g. "1-x".
    std::string display() const;

    void add_term(const Monomial& m, const Rational& c);

private:
    static RingPtr unify(const MPoly& a, const MPoly& b);
    Monomial zero_monomial() const { return Monomial(nvars(), 0); }

    RingPtr ring_;
    TermMap terms_;
};

MPoly poly_gcd(const MPoly& a, const MPoly& b);

// Quotient of polynomials with gcd(num, den) = 1 and monic den.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(const MPoly& p) : num_(p), den_(MPoly(1).lifted(p.ring())) {}  // NOLINT
    RatFunc(const Rational& c) : RatFunc(MPoly(c)) {}  // NOLINT
    RatFunc(long c) : RatFunc(MPoly(c)) {}  // NOLINT
    RatFunc(const MPoly& num, const MPoly& den);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    RingPtr ring() const;

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc pow(int n) const;
    RatFunc inverse() const;

    RatFunc derivative(int var) const;
    Rational eval(const std::vector<Rational>& point) const;
    RatFunc lifted(const RingPtr& ring) const;

    std::string to_string() const;
    std::string display() const;
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    friend bool operator<(const RatFunc& a, const RatFunc& b);

private:
    MPoly num_;
    MPoly den_;
};

RatFunc partial_derivative(const RatFunc& f, const std::string& var);
Rational eval_rat(const RatFunc& f, const std::map<std::string, Rational>& point);

// Parse "(1-x)^2/(4*x)" style input. Unknown identifiers raise ParseError.
RatFunc parse_ratfunc(const std::string& text, const RingPtr& ring);

// Default prime point: variable i evaluated at the i-th prime >= 101.
std::vector<Integer> default_prime_point(size_t nvars);

bool prime_substitution_filter(const MPoly& candidate,
                               const std::vector<Integer>& alphabet_values,
                               const std::vector<Integer>& point);
bool prime_substitution_filter(const MPoly& candidate,
                               const std::vector<Integer>& alphabet_values);

}  // namespace mplsym
