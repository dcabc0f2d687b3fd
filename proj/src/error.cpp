#include "pbrigid/error.hpp"

namespace pbrigid {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_characteristic: return "InvalidCharacteristic";
        case Errc::inconsistent_trait: return "InconsistentTrait";
        case Errc::division_by_zero: return "DivisionByZero";
        case Errc::field_mismatch: return "FieldMismatch";
        case Errc::arity_mismatch: return "ArityMismatch";
        case Errc::exponent_overflow: return "ExponentOverflow";
        case Errc::unassigned_u_weight: return "UnassignedUWeight";
        case Errc::zero_polynomial: return "ZeroPolynomial";
        case Errc::zero_element: return "ZeroElement";
        case Errc::invalid_tuple: return "InvalidTuple";
        case Errc::invalid_relation: return "InvalidRelation";
        case Errc::presentation_mismatch: return "PresentationMismatch";
        case Errc::unverified_map: return "UnverifiedMap";
        case Errc::not_a_domain: return "NotADomain";
        case Errc::decomposition_failure: return "DecompositionFailure";
        case Errc::no_sqrt_minus_one: return "NoSqrtMinusOne";
        case Errc::char_two: return "CharTwo";
        case Errc::case_condition_violated: return "CaseConditionViolated";
        case Errc::no_unit_exponent: return "NoUnitExponent";
        case Errc::image_not_in_subring: return "ImageNotInSubring";
        case Errc::trivial_map: return "TrivialMap";
        case Errc::non_prime_graded_relation: return "NonPrimeGradedRelation";
        case Errc::search_space_too_large: return "SearchSpaceTooLarge";
        case Errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

}  // namespace pbrigid
