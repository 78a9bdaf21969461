#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mplsym/integrator.hpp"

namespace mplsym {

// The spanning set B_w^(i) over the HPL alphabet, weights 1..4 in catalog
// order. The restricted variant is the subset sufficient for {0,1} indices.
std::vector<BasisFunction> hpl_spanning_set(bool restricted = false);
// Label "B<w>(<i>)" of a spanning-set expression, or "" if absent.
std::string hpl_basis_label(const ExprPtr& e);

// Solutions R = s 2^delta x^alpha (1-x)^beta (1+x)^gamma with 1 - R of the same form.
struct Table2Row {
    int s;
    int alpha, beta, gamma, delta;
    RatFunc value;
    bool constant;
};
std::vector<Table2Row> table2_enumerate(int bound = 4, int const_bound = 2);

ExprPtr hpl_expr(const std::vector<int>& a);
Symbol hpl_symbol(const std::vector<int>& a);
std::vector<std::vector<int>> hpl_indices(int weight);
std::string index_to_string(const std::vector<int>& a);
std::vector<int> parse_index(const std::string& s);

struct HplReduction {
    std::vector<int> index;
    IntegrationResult integration;
    FixReport fix;
    ExprPtr expression;
};

class HplReducer {
public:
    explicit HplReducer(int digits = 40);
    HplReduction reduce(const std::vector<int>& a);
    const Alphabet& alphabet() const { return A_; }

private:
    int digits_;
    Alphabet A_;
    std::vector<BasisFunction> full_;
    std::unique_ptr<Integrator> full_int_;
    std::unique_ptr<Integrator> small_int_;
};

}  // namespace mplsym
