#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mplsym/polygon.hpp"

namespace mplsym {

enum class Kind { G, Li, H, Nielsen, Log, Const, Scalar, Sum, Product, Power };
enum class Constant { Pi, Zeta3, Ln2, Li4Half };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression node. Which fields are meaningful depends on `kind`:
//   G        args (singularities), arg
//   Li       index (m_1..m_k), args (x_1..x_k)
//   H        index (entries in {-1,0,1}), arg
//   Nielsen  index = {n, p}, arg
//   Log      arg
//   Const    constant
//   Scalar   scalar
//   Sum, Product  children
//   Power    children[0], exponent
struct Expr {
    Kind kind = Kind::Scalar;
    std::vector<RatFunc> args;
    RatFunc arg;
    std::vector<int> index;
    Constant constant = Constant::Pi;
    Rational scalar = 0;
    std::vector<ExprPtr> children;
    int exponent = 1;
};

ExprPtr make_G(std::vector<RatFunc> a, RatFunc x);
ExprPtr make_Li(std::vector<int> m, std::vector<RatFunc> x);
ExprPtr make_H(std::vector<int> a, RatFunc x);
ExprPtr make_nielsen(int n, int p, RatFunc x);
ExprPtr make_log(RatFunc f);
ExprPtr make_const(Constant c);
ExprPtr make_scalar(const Rational& q);
ExprPtr make_sum(std::vector<ExprPtr> terms);
ExprPtr make_product(std::vector<ExprPtr> factors);
ExprPtr make_power(ExprPtr base, int k);
ExprPtr scaled(const Rational& c, ExprPtr e);

ExprPtr operator+(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator-(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator*(const ExprPtr& a, const ExprPtr& b);

int weight(const ExprPtr& e);
bool is_zero_scalar(const ExprPtr& e);

// Flattens nested sums and products and collects rational prefactors.
// The result is a sum of (coefficient * product of atoms) terms.
struct Monom {
    Rational coeff;
    std::vector<ExprPtr> factors;
};
std::vector<Monom> expand(const ExprPtr& e);
ExprPtr from_monoms(const std::vector<Monom>& terms);

std::string to_string(const ExprPtr& e);

struct Parsed {
    ExprPtr expr;
    RingPtr ring;
};
// Variables are taken from `ring` if given, else collected and sorted.
Parsed parse_expr(const std::string& text, RingPtr ring = nullptr);
std::vector<std::string> expr_variables(const std::string& text);

Symbol symbol_of(const ExprPtr& e, const Alphabet& A);

// Letters needed for symbol_of(e): factors of every singularity, argument
// and pairwise difference appearing in the iterated integrals of e.
Alphabet expr_alphabet(const ExprPtr& e, const RingPtr& ring);

// Li_{m_1..m_k}(x_1..x_k) = (-1)^k G_{m_k..m_1}(1/x_k, ..., 1/(x_1...x_k); 1)
ExprPtr li_to_g(const std::vector<int>& m, const std::vector<RatFunc>& x);
ExprPtr g_to_li(const ExprPtr& g);

// Shuffle product of G(a;x) and G(b;x) as a sum of G(.;x).
ExprPtr g_shuffle_expand(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b,
                         const RatFunc& x);
// Rewrites G(w;x) so every G has a nonzero last singularity, modulo
// products with powers of G(0;x).
ExprPtr g_extract_trailing_zeros(const std::vector<RatFunc>& w, const RatFunc& x);

// G(a_1..a_n;1) -> (-1)^n G(1-a_n..1-a_1;1)
ExprPtr hoelder_dual(const ExprPtr& g);

struct CMZVSpec {
    std::vector<int> m;
    std::vector<int> s;
    bool convergent() const;
    int weight() const;
};

// zeta(m; s) as (-1)^k G_{m_1..m_k}(s^_1..s^_k; 1) with s^_j = s_1...s_j.
ExprPtr cmzv_to_g(const CMZVSpec& z);
Polygon cmzv_polygon(const CMZVSpec& z);
Symbol cmzv_symbol(const CMZVSpec& z, const Alphabet& A);

}  // namespace mplsym
