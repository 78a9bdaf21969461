#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mplsym/mpl.hpp"
#include "mplsym/numeric.hpp"

namespace mplsym {

// An indecomposable function with its symbol over the session alphabet.
struct BasisFunction {
    ExprPtr expr;
    Symbol symbol;
    int weight = 0;
    int nletters = 0;  // distinct non-constant letters in its arguments
    bool constant = false;
    std::string label;
};

BasisFunction make_basis_function(const ExprPtr& e, const Alphabet& A, const std::string& label = "");

struct AnsatzOptions {
    int bound = 4;
    int const_bound = 2;
    bool depth2 = true;
};

// Logs of letters, Li_n at depth-1 candidate arguments and, at weight 4,
// Li_{2,2} at pairs of candidates whose difference factorizes.
std::vector<BasisFunction> default_indecomposables(const Alphabet& A, int max_weight,
                                                   const AnsatzOptions& opt = {});

// A product of indecomposables, one per part of a partition.
struct AnsatzElement {
    std::vector<int> factors;  // indices into the indecomposables, weights non-increasing
    Symbol symbol;             // full symbol (shuffle of the factors)
    Symbol projected;          // project_partition(lambda, symbol)
    int nletters = 0;
    std::string label;
};

std::vector<AnsatzElement> build_ansatz(const Partition& lambda, const std::vector<BasisFunction>& indec);

struct LevelRecord {
    Partition lambda;
    std::vector<std::pair<std::string, Rational>> coeffs;  // nonzero only
};

struct IntegrationResult {
    ExprPtr expression;
    Symbol residual;
    std::vector<LevelRecord> levels;
};

class Integrator {
public:
    Integrator(Alphabet A, std::vector<BasisFunction> indec);

    const Alphabet& alphabet() const { return A_; }
    const std::vector<BasisFunction>& indecomposables() const { return indec_; }
    const std::vector<AnsatzElement>& ansatz(const Partition& lambda);

    // Coefficients of the ansatz columns at level lambda (free ones zero).
    // Throws Unsolvable if the projected residual is outside their span.
    std::vector<Rational> solve_level(const Symbol& residual, const Partition& lambda);

    IntegrationResult integrate(const Symbol& S, bool check_integrable = true);

    ExprPtr element_expr(const AnsatzElement& el) const;

private:
    struct Echelon {
        std::vector<Word> pivot_word;
        std::vector<std::map<Word, Rational>> vec;
        std::vector<std::map<int, Rational>> combo;
    };
    Echelon& echelon(const Partition& lambda);

    Alphabet A_;
    std::vector<BasisFunction> indec_;
    std::map<Partition, std::vector<AnsatzElement>> ansatz_;
    std::map<Partition, Echelon> echelon_;
};

IntegrationResult integrate_symbol(const Symbol& S, const Alphabet& A, const AnsatzOptions& opt = {});

// Real kernel constants of the given weight with vanishing symbol.
std::vector<ExprPtr> kernel_constants(int weight);

struct FixOptions {
    int digits = 40;
    std::vector<Rational> points;  // empty: k/23 for k = 1..18
    Integer maxcoeff = 65536;
};

struct FixReport {
    ExprPtr expression;  // candidate plus constant terms
    ExprPtr constants;   // the added constant terms alone
    std::vector<Rational> points;
    std::vector<Real> residuals;
    Real max_residual;
};

// Finds rational c such that target - candidate = sum c * K * phi where K
// runs over kernel constants and phi over products of the x-dependent
// indecomposables, with weight(K) + weight(phi) = weight.
FixReport fix_constants(const std::function<Real(const Rational&)>& target, const ExprPtr& candidate, int weight,
                        const std::vector<BasisFunction>& indec, const FixOptions& opt = {});

}  // namespace mplsym
