#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "pbrigid/error.hpp"

namespace pbrigid {

// A coefficient field: F_p for prime p, or Q when characteristic == 0.
// Closure and sqrt(-1) are declared traits used by classification; they do
// not change arithmetic, which is always concrete F_p or Q.
//
// Resolution invariants:
//   - algebraically_closed implies sqrt_minus_one.
//   - p > 0, not closed: sqrt_minus_one iff p == 2 or p % 4 == 1.
//   - p == 0, not closed: sqrt_minus_one only if declared (a field like Q(i));
//     plain Q resolves to absent.
struct FieldSpec {
    std::uint64_t characteristic = 0;
    bool algebraically_closed = false;
    bool sqrt_minus_one = false;

    bool operator==(const FieldSpec&) const = default;
};

// Validates p (0 or a prime below 2^31, so residue products fit in 64 bits)
// and resolves the traits. A declaration that contradicts concrete arithmetic
// or closure raises InconsistentTrait.
FieldSpec make_field(std::uint64_t characteristic, bool algebraically_closed = false,
                     std::optional<bool> sqrt_minus_one_declared = std::nullopt);

bool is_prime_u64(std::uint64_t n);

// A residue w with w*w == -1 in F_p, when one exists in the concrete field
// (p == 2 or p % 4 == 1). Traits promising sqrt(-1) in an abstract extension
// do not make it representable here.
std::optional<std::uint64_t> concrete_sqrt_minus_one(const FieldSpec& field);

// True when the traits promise elements that concrete arithmetic (F_p or Q)
// cannot represent, e.g. a declared closure or a declared sqrt(-1) over Q.
bool has_abstract_traits(const FieldSpec& field);

// An element of F_p (canonical residue in [0, p)) or of Q (reduced fraction).
// Arithmetic between coefficients of different characteristic raises
// FieldMismatch; traits are not carried here because they do not affect
// arithmetic.
class Coeff {
public:
    Coeff() : p_(0) {}
    explicit Coeff(const FieldSpec& field) : p_(field.characteristic) {}

    static Coeff from_int(const FieldSpec& field, long long value);
    static Coeff from_mpq(const FieldSpec& field, const mpq_class& value);
    // Accepts a decimal integer (F_p, canonicalized mod p) or "num/den" (Q).
    static Coeff parse(const FieldSpec& field, const std::string& text);

    std::uint64_t characteristic() const { return p_; }
    bool is_zero() const;
    bool is_one() const;

    Coeff operator+(const Coeff& rhs) const;
    Coeff operator-(const Coeff& rhs) const;
    Coeff operator*(const Coeff& rhs) const;
    Coeff operator-() const;
    bool operator==(const Coeff& rhs) const;
    bool operator!=(const Coeff& rhs) const { return !(*this == rhs); }

    // Raises DivisionByZero on zero.
    Coeff inverse() const;
    Coeff pow(std::uint64_t k) const;

    // Canonical text: residue decimal for F_p; "n" or "n/d" (reduced, d > 0)
    // for Q.
    std::string str() const;

    std::uint64_t residue() const { return res_; }
    const mpq_class& rational() const { return rat_; }

private:
    std::uint64_t p_;        // 0 = rationals
    std::uint64_t res_ = 0;  // used when p_ > 0
    mpq_class rat_;          // used when p_ == 0

    void check_same_field(const Coeff& rhs) const;
};

// n choose k reduced into the field: digit-by-digit base-p product (Lucas) for
// F_p, exact integer binomial for Q.
Coeff binomial_in_field(const FieldSpec& field, std::uint64_t n, std::uint64_t k);

}  // namespace pbrigid
