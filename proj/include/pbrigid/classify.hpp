#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbrigid/expmap.hpp"

namespace pbrigid {

enum class RigidityStatus { rigid, stably_rigid, non_rigid, non_domain_non_rigid, unknown };

const char* status_name(RigidityStatus s);

// Exponent-pattern memberships driving the rule engine:
//   F:  the characteristic does not divide gcd(tuple); the ring is a domain.
//   T:  some exponent is 1, or two exponents equal 2.
//   R:  some exponent is 1, or a pair a_i = p^r, a_j = s*p^e with 1 <= r <= e.
//   S3: three entries permuting to (2, 2m, 2*p^e) with m > 1, e >= 1 and the
//       characteristic an odd prime not dividing 2m.
// For characteristic 0, F always holds, R reduces to its unit clause, and S3
// is empty.
struct SetMembership {
    bool in_F = false;
    bool in_T = false;
    bool in_R = false;
    bool in_S3 = false;
    std::optional<std::size_t> unit_index;
    std::optional<std::pair<std::size_t, std::size_t>> square_pair;
    std::optional<std::pair<std::size_t, std::size_t>> power_pair;
    std::uint64_t power_pair_r = 0;  // a_i = p^r
    std::uint64_t power_pair_s = 0;  // a_j = s * p^e
    std::uint64_t power_pair_e = 0;
    std::uint64_t s3_m = 0;
    std::uint64_t s3_e = 0;
};

SetMembership membership(const FieldSpec& field, const std::vector<std::uint64_t>& tuple);

struct Verdict {
    std::vector<std::uint64_t> tuple;
    FieldSpec field;
    RigidityStatus status = RigidityStatus::unknown;
    std::string rule;      // "R1".."R8" for tuples, "S1"/"S2" for special forms
    std::string citation;  // self-contained justification
    std::optional<ExpMap> witness;
    std::vector<std::string> notes;
};

// First-match rule engine over a tuple with at least three entries:
//   R1 characteristic divides gcd        -> NonDomainNonRigid + witness
//   R2 some exponent 1                   -> NonRigid + witness
//   R3 p-power pair                      -> NonRigid + witness
//   R4 two squares and sqrt(-1) present  -> NonRigid (+ witness when concrete)
//   R5 decomposition (a, s2 p^r, s3 p^e) with 1/a + 1/s2 + 1/s3 <= 1,
//      three entries only                -> StablyRigid
//   R6 three-entry domain outside R, T, S3 -> Rigid
//   R7 (2,2,c), c odd > 1, p != 2, no sqrt(-1), not closed -> Rigid
//   R8 otherwise                         -> Unknown
Verdict classify(const FieldSpec& field, const std::vector<std::uint64_t>& tuple);

// X^a + Y^b Z^c plus an optional pure-Y tail: rigid whenever a, b, c >= 2 and
// gcd(a, b, c) == 1; two gradings with weight zero on Y or on Z pin every
// exponential map. The tail never changes the verdict.
Verdict classify_monomial_surface(const FieldSpec& field, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t c,
                                  const std::optional<Poly>& y_tail = std::nullopt);

// X^a + Y^b + Z^c + lambda: rigid whenever the diagonal tuple classifies as
// Rigid or StablyRigid (the translate itself is only claimed plain rigid).
Verdict classify_translate(const FieldSpec& field, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c, const Coeff& lambda);

// k[X,Y,Z,T] / (X^m Y^n + T^(q p^r) + Z^(p^e)) over F_p, with p not dividing
// q and e > r >= 1.
struct MixedThreefold {
    std::uint64_t m = 1, n = 1, q = 1, r = 1, e = 2;
};

enum class FixedGenerator { x, y, z, t };

struct FixingVerdict {
    bool excluded = false;  // no nontrivial exponential map fixes the generator
    std::string citation;
};

FixingVerdict no_map_fixing(const FieldSpec& field, const MixedThreefold& form,
                            FixedGenerator generator);

// Four-entry tuples: no nontrivial exponential map fixes generator
// `fixed_index` when the tuple lies in F4 outside R4 and T4, and the other
// three entries either lie in F3 outside S3 or reduce, after dividing out the
// smallest p-power, to a tuple in F3 outside T3 and S3.
FixingVerdict no_map_fixing(const FieldSpec& field, const std::vector<std::uint64_t>& tuple,
                            std::size_t fixed_index);

}  // namespace pbrigid
