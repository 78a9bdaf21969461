#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mplsym/exact.hpp"

namespace mplsym {

// Sparse exponent vector over alphabet letters; the empty map is the unit.
using MultVector = std::map<int, int>;

// Letters are primitive integer polynomials with positive leading
// coefficient, or positive integer constants. Index order is canonical.
class Alphabet {
public:
    Alphabet() : ring_(make_ring({})) {}
    explicit Alphabet(RingPtr ring) : ring_(std::move(ring)) {}

    static Alphabet from_strings(const std::vector<std::string>& letters, const RingPtr& ring);
    // {2, x, 1-x, 1+x} over the single variable x.
    static Alphabet hpl();

    const RingPtr& ring() const { return ring_; }
    size_t size() const { return letters_.size(); }
    const MPoly& letter(int i) const { return letters_.at(i); }
    // Same letter with the sign flipped so a nonzero constant term is positive.
    const MPoly& display_poly(int i) const { return display_.at(i); }
    std::string name(int i) const { return display_.at(i).to_string(); }
    std::vector<std::string> names() const;
    bool is_constant(int i) const { return letters_.at(i).is_constant(); }

    int find(const MPoly& p) const;
    // Inserts the canonical form of p unless an associate is present.
    int add(const MPoly& p);

    RatFunc realize(const MultVector& v, int sign = 1) const;
    std::vector<Integer> values_at(const std::vector<Integer>& point) const;

private:
    RingPtr ring_;
    std::vector<MPoly> letters_;
    std::vector<MPoly> display_;
};

MPoly canonical_letter(const MPoly& p);

std::optional<MultVector> try_decompose(const RatFunc& f, const Alphabet& A);
MultVector decompose(const RatFunc& f, const Alphabet& A);

Alphabet extend_alphabet(const Alphabet& P);

// Adds the prime constants of the content of p and its remaining factors
// (rational roots split off when univariate) to A.
void absorb_factors(Alphabet& A, const MPoly& p);

struct CandidateArg {
    int sign;
    MultVector exps;
    RatFunc value;
};

// Signed monomials R = sign * prod letter^exps with 1 - R decomposable.
// `bound` limits the total absolute exponent of non-constant letters and
// `const_bound` that of constant letters.
std::vector<CandidateArg> candidate_args_depth1(const Alphabet& A, int bound, int const_bound = 2);

// {R, 1-R, 1/R, 1/(1-R), 1-1/R, R/(R-1)}
std::vector<RatFunc> s3_orbit(const RatFunc& R);

// Ordered k-tuples of distinct members of R1 with all pairwise differences
// decomposable over A.
std::vector<std::vector<RatFunc>> candidate_args_depthk(const std::vector<RatFunc>& R1, int k,
                                                        const Alphabet& A);

std::string multvector_to_string(const MultVector& v, const Alphabet& A);

}  // namespace mplsym
