#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pbrigid/expmap.hpp"
#include "pbrigid/ring.hpp"

namespace pbrigid {

// L/a_i weights for a Pham-Brieskorn tuple, L = lcm(tuple). The relation base
// is homogeneous of degree L, so every relation power is homogeneous too.
WeightVector standard_grading(const PresPtr& pres);

// Weights making X1^r + h homogeneous, given base weights for X2..Xn:
// with g = gcd(r, deg_base(h)), X1 gets deg_base(h)/g and the base rescales
// by r/g. The tail must have positive base degree.
WeightVector homogenizing_weights(const PresPtr& pres, const std::vector<long long>& base);

struct GradedPresentation {
    PresPtr pres;
    PrimalityCheck primality = PrimalityCheck::unchecked;
};

// Presentation of the associated graded ring for the filtration induced by w:
// the relation is replaced by its top weight component, which must keep the
// X1 power and shed every other X1 term. With require_prime the primality of
// the graded relation must be certified, else NonPrimeGradedRelation.
GradedPresentation associated_graded(const PresPtr& pres, const WeightVector& w,
                                     bool require_prime = false);

// Symbol map into the associated graded ring: the top weight component.
RingElement principal_symbol(const GradedPresentation& graded, const RingElement& f,
                             const WeightVector& w);

enum class HomogenizeOutcome {
    already_homogeneous,            // the map was isobaric; nothing changed
    homogenized,                    // the degree-selected candidate verified
    candidate_verification_failed,  // the candidate broke an axiom
};

struct HomogenizationReport {
    HomogenizeOutcome outcome = HomogenizeOutcome::candidate_verification_failed;
    mpq_class slope;  // weight drift per U order across all Taylor coefficients
    std::vector<std::pair<std::size_t, std::uint64_t>> attaining;  // (generator, order)
    std::optional<ExpMap> result;
    VerifyReport failure;  // set when the candidate fails
};

// Keeps, in each Taylor coefficient phi^(j)(Xi), only the component of weight
// w_i + j * slope, where the slope is the largest drift over all nonzero
// coefficients. The candidate is re-verified, never assumed. Needs a verified
// nontrivial map.
HomogenizationReport homogenize_map(const ExpMap& map, const WeightVector& w);

// The two degenerate gradings of X^a + Y^b * Z^c: weight zero on Y or on Z.
std::pair<WeightVector, WeightVector> monomial_surface_gradings(std::uint64_t a, std::uint64_t b,
                                                                std::uint64_t c);

}  // namespace pbrigid
