#pragma once

#include <vector>

#include "mplsym/tensor.hpp"

namespace mplsym {

// Rooted decorated polygon with sides e_1..e_n carrying `decorations` and
// the root side e_{n+1}. G(a_1,...,a_n; x) is P(a_n,...,a_1, x).
struct Polygon {
    std::vector<RatFunc> decorations;
    RatFunc root;

    int sides() const { return int(decorations.size()) + 1; }
    const RatFunc& side(int k) const;  // 1-based, k = sides() is the root
};

Polygon polygon_of_G(const std::vector<RatFunc>& a, const RatFunc& x);

// Arrow from vertex v_j to side e_k, both 1-based. Side e_k joins v_k and v_{k+1}.
struct Arrow {
    int from_vertex;
    int to_side;
    bool operator<(const Arrow& o) const {
        return from_vertex != o.from_vertex ? from_vertex < o.from_vertex : to_side < o.to_side;
    }
    bool operator==(const Arrow& o) const {
        return from_vertex == o.from_vertex && to_side == o.to_side;
    }
};

struct Dissection {
    std::vector<Arrow> arrows;  // sorted
};

bool is_backward(const Arrow& a);
bool arrows_cross(const Arrow& a, const Arrow& b, int nsides);

// All maximal non-crossing arrow sets of an nsides-gon, in lexicographic order.
const std::vector<Dissection>& enumerate_maximal_dissections(int nsides);
std::vector<Dissection> enumerate_maximal_dissections(const Polygon& P);

int dissection_sign(const Dissection& D);

// Bigon of the dissection: a piece of `nonroot_side` facing a piece of `root_side`.
struct Bigon {
    int nonroot_side;
    int root_side;
};

struct DualTree {
    std::vector<Bigon> nodes;
    std::vector<int> parent;  // -1 for the root node
    int root = 0;
    std::vector<std::vector<int>> children() const;
};

DualTree dual_tree(int nsides, const Dissection& D);
std::vector<std::vector<int>> linear_extensions(const DualTree& T);

// mu(x | root y) = 1 - y/x, or y when x = 0.
RatFunc mu(const RatFunc& x, const RatFunc& y);

Symbol polygon_symbol(const Polygon& P, const Alphabet& A);
// Signed contribution of one maximal dissection to polygon_symbol.
Symbol dissection_term(const Polygon& P, const Dissection& D, const Alphabet& A);
Symbol recursive_symbol(const Polygon& P, const Alphabet& A);

// Alphabet of all nonzero decorations and their pairwise differences.
Alphabet generic_alphabet(const Polygon& P);

// Directed edges (from_side, to_side) of the hook-arrow tree, rooted at the final side.
using HookTree = std::vector<std::pair<int, int>>;
HookTree hook_arrow_tree(int nsides, const Dissection& D);
bool is_interlaced(const HookTree& t);
int hook_backward_edges(const HookTree& t);
// All non-interlaced spanning trees on vertices 1..n directed to vertex n.
std::vector<HookTree> enumerate_hook_arrow_trees(int n);

}  // namespace mplsym
