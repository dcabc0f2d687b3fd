#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbrigid/coeffs.hpp"

namespace pbrigid {

// Exponent vector over the fixed variable order (X1, ..., Xn, U, V).
// Every polynomial in a given context carries n ring variables plus the two
// deformation slots; ring-only polynomials simply keep U and V at zero.
using Exponents = std::vector<std::uint64_t>;

std::uint64_t checked_add_exp(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul_exp(std::uint64_t a, std::uint64_t b);

// Graded-lexicographic order: total degree over all slots first, then
// lexicographic with X1 most significant. Used for canonical term order.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Integer weights for the ring variables plus an optional exact rational
// weight for U (assigned by homogenization, where the slope can be a proper
// fraction). V never carries weight; weighted operations reject V-terms.
struct WeightVector {
    std::vector<long long> weights;
    std::optional<mpq_class> u_weight;
};

// Sparse multivariate polynomial over F_p or Q with exact coefficients.
// Terms are kept in canonical form: no zero coefficients, exponent vectors
// all of arity nvars + 2.
class Poly {
public:
    Poly() = default;
    Poly(const FieldSpec& field, std::size_t nvars);

    static Poly zero(const FieldSpec& field, std::size_t nvars);
    static Poly constant(const FieldSpec& field, std::size_t nvars, const Coeff& c);
    static Poly constant_int(const FieldSpec& field, std::size_t nvars, long long c);
    // index in [0, nvars) selects a ring variable.
    static Poly variable(const FieldSpec& field, std::size_t nvars, std::size_t index);
    static Poly u(const FieldSpec& field, std::size_t nvars);
    static Poly v(const FieldSpec& field, std::size_t nvars);
    static Poly monomial(const FieldSpec& field, std::size_t nvars, const Exponents& exps,
                         const Coeff& c);

    const FieldSpec& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    std::size_t arity() const { return nvars_ + 2; }
    std::size_t u_slot() const { return nvars_; }
    std::size_t v_slot() const { return nvars_ + 1; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Coeff, GrlexLess>& terms() const { return terms_; }

    void add_term(const Exponents& exps, const Coeff& c);

    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    Poly operator-() const;
    bool operator==(const Poly& rhs) const;
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    Poly scale(const Coeff& c) const;
    // Exact power; in characteristic p the exponent is split base p so that
    // p-power steps are Frobenius (sparse) instead of repeated squaring.
    Poly pow(std::uint64_t k) const;

    // Degree over all slots (U and V included); nullopt for the zero poly.
    std::optional<std::uint64_t> total_degree() const;
    // Degree over ring-variable slots only.
    std::optional<std::uint64_t> ring_degree() const;
    std::uint64_t degree_in(std::size_t slot) const;  // 0 for the zero poly

    bool involves(std::size_t slot) const;

    // Max weighted degree of the terms; requires w.u_weight if U occurs and
    // rejects V-terms. nullopt for the zero poly.
    std::optional<mpq_class> weighted_degree(const WeightVector& w) const;
    Poly top_component(const WeightVector& w) const;
    Poly homogeneous_component(const WeightVector& w, const mpq_class& degree) const;
    bool is_homogeneous(const WeightVector& w) const;

    // Replaces ring variables by images (one per ring variable, same field and
    // arity). Optional entries at slots nvars (U) and nvars+1 (V) substitute
    // those; absent slots substitute identically.
    Poly substitute(const std::vector<Poly>& images) const;

    // Coefficients of U^0, U^1, ..., as polynomials with U cleared.
    std::vector<Poly> u_coefficients() const;
    Poly coefficient_of_u(std::uint64_t k) const;
    Poly set_u_to_zero() const;
    Poly rename_u_to_v() const;

    Poly derivative(std::size_t slot) const;

    // Exact quotient, or nullopt if rhs does not divide exactly.
    std::optional<Poly> divide_exact(const Poly& rhs) const;

    // Canonical rendering, leading term first: "3*X1^2*U + 1".
    std::string str() const;

private:
    FieldSpec field_;
    std::size_t nvars_ = 0;
    std::map<Exponents, Coeff, GrlexLess> terms_;

    void check_compatible(const Poly& rhs) const;
};

Poly operator*(const Coeff& c, const Poly& p);

}  // namespace pbrigid
