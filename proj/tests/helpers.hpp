#pragma once

#include <functional>
#include <optional>

#include "pbrigid/error.hpp"
#include "pbrigid/poly.hpp"

namespace pbrigid::testing {

// Runs f and reports the library error code it raised, if any.
inline std::optional<Errc> raised(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

// Monomial c * X1^e1 * ... * U^eu * V^ev from a full exponent vector.
inline Poly mono(const FieldSpec& field, std::size_t nvars, const Exponents& exps, long long c) {
    return Poly::monomial(field, nvars, exps, Coeff::from_int(field, c));
}

}  // namespace pbrigid::testing
