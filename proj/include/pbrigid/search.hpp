#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pbrigid/classify.hpp"

namespace pbrigid {

// Shape bounds for the candidate space: images x_i + sum c_{i,j,mu} mu U^j
// with 1 <= j <= max_u_degree and ring monomials mu of total degree at most
// max_total_degree. variable_mask, when present, lists the generators allowed
// to move; the rest stay pinned. The enumeration refuses to start when the
// reduced branch count exceeds ceiling.
struct SearchBounds {
    std::uint64_t max_u_degree = 1;
    std::uint64_t max_total_degree = 1;
    std::optional<std::vector<std::size_t>> variable_mask;
    std::uint64_t ceiling = std::uint64_t(1) << 32;
    // Called periodically with (candidates explored so far, verified maps found).
    std::function<void(std::uint64_t, std::uint64_t)> progress;
};

struct SearchOutcome {
    std::vector<ExpMap> maps;      // verified nontrivial maps, deterministic order
    std::uint64_t candidates = 0;  // fully assembled candidates, identity included
    std::size_t unknowns = 0;      // coefficient slots per U-layer
    std::size_t rank = 0;          // rank of the shared first-order system
    mpz_class leaf_bound;          // p^(nullity * layers), the refused quantity
};

// Exhaustive search within bounds over a concrete finite field. The U^0 part
// of every image is pinned to the generator, so the counit axiom holds by
// shape; the well-definedness identity is enforced degree by degree through a
// shared linear system, and surviving candidates get the full axiom check.
// Every yielded map is verified and nontrivial; identical inputs yield
// identical streams.
SearchOutcome enumerate_maps(const PresPtr& pres, const SearchBounds& bounds);

enum class CrossCheckFlag { confirmed, consistent, contradiction };

const char* cross_check_flag_name(CrossCheckFlag f);

struct CrossCheckReport {
    Verdict verdict;
    CrossCheckFlag flag = CrossCheckFlag::consistent;
    std::uint64_t found = 0;            // verified nontrivial maps within bounds
    bool witness_rediscovered = false;  // classifier witness found by the search
    std::string detail;
};

// Runs classify and enumerate_maps on the same tuple and compares directions:
// a map found on a Rigid or StablyRigid ring is a contradiction, a map found
// on a NonRigid or NonDomainNonRigid ring confirms the verdict, and anything
// else is merely consistent. Absence of finds is never evidence of rigidity.
CrossCheckReport cross_check(const std::vector<std::uint64_t>& tuple, std::uint64_t p,
                             const SearchBounds& bounds);

}  // namespace pbrigid
