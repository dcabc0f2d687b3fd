#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbrigid/ring.hpp"

namespace pbrigid {

// The three defining checks for a candidate exponential map phi: A -> A[U],
// given by generator images:
//   well_definedness:  G(phi(X1), ..., phi(Xn)) == 0 in A[U]
//   counit:            phi(Xi) at U = 0 equals Xi
//   comultiplication:  phi_V(phi_U(Xi)) == phi_{U+V}(Xi) in A[U, V]
enum class Axiom { well_definedness, counit, comultiplication };

const char* axiom_name(Axiom a);

struct VerifyReport {
    bool ok = false;
    std::optional<Axiom> failed_axiom;
    std::size_t failed_generator = 0;  // meaningful for counit/comultiplication
    Poly residual;                     // nonzero difference witnessing a failure
    std::string detail;
};

// A candidate exponential map, stored as one normal-form image in A[U] per
// generator. Images never involve V. Verification runs once and is cached;
// the map is immutable afterwards.
//
// The axiom check runs on the images as given, before reduction: both
// representations define the same map on the quotient, and reduction can
// inflate low-exponent generators into terms whose substitution powers are
// far more expensive. The unreduced images are dropped after the check.
class ExpMap {
public:
    ExpMap(PresPtr pres, std::vector<Poly> images);

    const PresPtr& presentation() const { return pres_; }
    const std::vector<Poly>& images() const { return images_; }
    const Poly& image(std::size_t i) const { return images_.at(i); }

    const VerifyReport& verify() const;
    bool is_verified() const { return verify().ok; }

private:
    PresPtr pres_;
    std::vector<Poly> images_;
    mutable std::optional<std::vector<Poly>> unreduced_;
    mutable std::optional<VerifyReport> report_;
};

ExpMap identity_map(PresPtr pres);

// nf(f(images)) in A[U]; f is reduced first.
Poly apply_map(const ExpMap& map, const Poly& f);
// phi^(i)(f): the U^i coefficient of phi(f), an element of A.
Poly taylor_coefficient(const ExpMap& map, const Poly& f, std::uint64_t i);

// deg_U(phi(f)); nullopt for f == 0. Requires a verified map.
std::optional<std::uint64_t> phi_degree(const ExpMap& map, const Poly& f);

// All generator images equal the generators. Requires a verified map.
bool is_trivial(const ExpMap& map);

struct DegreeInequalityReport {
    bool holds = false;
    std::uint64_t degree = 0;
    std::string detail;
};

// For f != 0 in a domain: deg_phi(phi^(i)(f)) <= deg_phi(f) - i for
// 1 <= i <= deg_phi(f), and the top coefficient phi^(d)(f) is invariant.
DegreeInequalityReport check_degree_inequality(const ExpMap& map, const Poly& f);

struct ExtendedReport {
    bool ok = true;
    std::size_t identities_checked = 0;
    std::string first_violation;
};

// Replays the derived identities on sample elements: additivity of each
// phi^(i), the Leibniz expansion phi^(n)(ab) = sum phi^(i)(a) phi^(j)(b),
// and the composition rule phi^(i)(phi^(j)(a)) = C(i+j, i) phi^(i+j)(a).
// Requires a verified map.
ExtendedReport verify_extended(const ExpMap& map, const std::vector<Poly>& sample,
                               std::uint64_t max_order = 8);

// --- Constructions. Each returns a map that has already passed verify. ---

// Needs tuple[i] == 1: Xj moves by U and Xi absorbs the relation shift.
// Works for any relation power.
ExpMap construct_from_unit_exponent(PresPtr pres, std::size_t i, std::size_t j);

// Needs char p > 0, power == 1, tuple[i] == p^r, tuple[j] == s*p^e with
// r <= e: Xi absorbs the p^r-th root of the shift of Xj^(s*p^e).
ExpMap construct_from_p_power_pair(PresPtr pres, std::size_t i, std::size_t j);

// Needs power == 1, n >= 3, tuple[i] == tuple[j] == 2, char != 2, and a
// concrete sqrt(-1): rewrites Xi^2 + Xj^2 = u*v and slides the remaining
// variables along u.
ExpMap construct_from_two_squares(PresPtr pres, std::size_t i, std::size_t j);

// Constructions on a proper relation power G = g^m, m > 1.
enum class PowerRelationCase {
    auto_select,
    unit_exponents,    // char does not divide any tuple entry
    high_valuation,    // some entry s*p^e with p^e >= m
    low_valuation,     // some entry s*p^e with 1 < p^e < m
};

ExpMap construct_on_power_relation(PresPtr pres,
                                   PowerRelationCase which = PowerRelationCase::auto_select);

struct RestrictionResult {
    ExpMap map;                         // on the reduced presentation
    bool trivial = false;
    std::uint64_t prime_power = 1;      // p^r
    std::size_t pivot = 0;              // the unique index not divisible by p
    std::vector<std::uint64_t> reduced_tuple;
};

// Restricts a verified map on B_(a_pivot, s_2 p^{e_2}, ...) to the subring
// k[X_pivot, X_i^{p^r}] with r = min e_i, reading the result on the reduced
// tuple (a_pivot, s_i p^{e_i - r}). The pivot image must already lie in the
// subring; ImageNotInSubring otherwise.
RestrictionResult restrict_to_frobenius_subring(const ExpMap& map);

}  // namespace pbrigid
