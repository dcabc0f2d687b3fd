#pragma once

#include <string>

#include "pbrigid/classify.hpp"
#include "pbrigid/expmap.hpp"

namespace pbrigid {

// JSON file formats, versioned with "format": 1 and rejected otherwise.
//
// ring.json:
//   { "format": 1, "char": p, "kind": "pham_brieskorn" | "xr_plus_h",
//     "tuple": [...], "power": m,      (pham_brieskorn only; power optional on
//                                       input and defaults to 1)
//     "relation": [term...] }          (always emitted; optional cross-check
//                                       on pham_brieskorn input)
// map.json:
//   { "format": 1, "ring": <ring object>, "images": [[term...] ...] }
// term:
//   { "coeff": "<decimal or num/den>", "exps": [e1..en, eU] }
//
// Emission is canonical: fixed key order, terms leading-first, coefficients
// in canonical string form, two-space indentation, trailing newline, no
// timestamps. parse(emit(x)) reproduces x and emit is a fixed point on
// parsed objects, so round trips are byte-identical.
//
// Malformed JSON or schema violations raise ParseError; content that parses
// but fails presentation or map validation raises that component's error.

std::string ring_to_json(const PresPtr& pres);
PresPtr ring_from_json(const std::string& text);

std::string map_to_json(const ExpMap& map);
ExpMap map_from_json(const std::string& text);

// One-way verdict rendering for the CLI:
//   { "tuple", "char", "traits", "status", "rule", "citation",
//     "witness"?, "notes" }
std::string verdict_to_json(const Verdict& v);

}  // namespace pbrigid
