#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pbrigid/poly.hpp"

namespace pbrigid {

enum class RingKind { pham_brieskorn, xr_plus_h };

enum class PrimalityCheck { prime, not_prime, unchecked };

// Shape-based primality for a relation X^r + h with h free of X:
//   - h a sum of powers of >= 2 distinct single variables: prime iff the
//     characteristic does not divide gcd(r, exponents);
//   - h a single two-variable monomial c*Y^b*Z^c': prime iff gcd(r,b,c') == 1;
//   - anything else is not certified either way.
PrimalityCheck relation_shape_primality(const FieldSpec& field, std::size_t nvars,
                                        std::uint64_t r, const Poly& h);

// Quotient of k[X1..Xn] by one relation G, monic of degree `reduction_degree`
// in X1. Normal forms keep the X1-exponent below the reduction degree.
//
// Kinds:
//   pham_brieskorn: G = (X1^a1 + ... + Xn^an)^m, with the tuple and power
//     retained; domain iff m == 1 and char does not divide gcd(tuple).
//   xr_plus_h: G = X1^r + h(X2..Xn); domain status comes from the shape
//     check above and may be unknown.
class RingPresentation {
public:
    static std::shared_ptr<const RingPresentation> pham_brieskorn(
        const FieldSpec& field, const std::vector<std::uint64_t>& tuple, std::uint64_t power = 1);
    static std::shared_ptr<const RingPresentation> xr_plus_h(const FieldSpec& field,
                                                             std::size_t nvars, std::uint64_t r,
                                                             const Poly& h);

    const FieldSpec& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    RingKind kind() const { return kind_; }
    const Poly& relation() const { return relation_; }
    std::size_t reduction_slot() const { return 0; }
    std::uint64_t reduction_degree() const { return reduction_degree_; }
    const std::vector<std::uint64_t>& tuple() const { return tuple_; }
    std::uint64_t power() const { return power_; }
    // h for the xr_plus_h kind; relation minus the X1 power otherwise.
    const Poly& tail() const { return tail_; }
    std::optional<bool> is_domain() const { return is_domain_; }

    Poly normal_form(const Poly& f) const;

    bool same_presentation(const RingPresentation& rhs) const;

private:
    RingPresentation(const FieldSpec& field, std::size_t nvars, RingKind kind, Poly relation,
                     std::uint64_t reduction_degree, std::vector<std::uint64_t> tuple,
                     std::uint64_t power, std::optional<bool> is_domain);

    FieldSpec field_;
    std::size_t nvars_;
    RingKind kind_;
    Poly relation_;
    std::uint64_t reduction_degree_;
    std::vector<std::uint64_t> tuple_;  // empty for xr_plus_h
    std::uint64_t power_;
    std::optional<bool> is_domain_;
    Poly tail_;     // relation - X1^reduction_degree
    Poly rewrite_;  // -tail: X1^r maps to this during reduction
};

using PresPtr = std::shared_ptr<const RingPresentation>;

// An element in normal form. Elements of different presentations never
// compare; operations raise PresentationMismatch.
class RingElement {
public:
    RingElement(PresPtr pres, const Poly& raw);

    const PresPtr& presentation() const { return pres_; }
    const Poly& nf() const { return nf_; }
    bool is_zero() const { return nf_.is_zero(); }

    RingElement operator+(const RingElement& rhs) const;
    RingElement operator-(const RingElement& rhs) const;
    RingElement operator*(const RingElement& rhs) const;
    bool operator==(const RingElement& rhs) const;
    bool operator!=(const RingElement& rhs) const { return !(*this == rhs); }

private:
    PresPtr pres_;
    Poly nf_;

    void check_same(const RingElement& rhs) const;
};

RingElement make_element(PresPtr pres, const Poly& raw);
RingElement generator(PresPtr pres, std::size_t index);

}  // namespace pbrigid
