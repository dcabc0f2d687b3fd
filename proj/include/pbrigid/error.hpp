#pragma once

#include <stdexcept>
#include <string>

namespace pbrigid {

// Every failure mode raised by the library. Verification *outcomes* (a map
// failing an axiom) are reported through result structs, not exceptions;
// these codes cover contract violations and malformed input.
enum class Errc {
    invalid_characteristic,
    inconsistent_trait,
    division_by_zero,
    field_mismatch,
    arity_mismatch,
    exponent_overflow,
    unassigned_u_weight,
    zero_polynomial,
    zero_element,
    invalid_tuple,
    invalid_relation,
    presentation_mismatch,
    unverified_map,
    not_a_domain,
    decomposition_failure,
    no_sqrt_minus_one,
    char_two,
    case_condition_violated,
    no_unit_exponent,
    image_not_in_subring,
    trivial_map,
    non_prime_graded_relation,
    search_space_too_large,
    parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace pbrigid
