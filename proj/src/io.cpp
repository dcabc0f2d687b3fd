#include "pbrigid/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

#include "pbrigid/error.hpp"

namespace pbrigid {

namespace {

using ordered = nlohmann::ordered_json;

ordered parse_text(const std::string& text) {
    try {
        return ordered::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::parse_error, e.what());
    }
}

const ordered& field_at(const ordered& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(Errc::parse_error, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::uint64_t uint_at(const ordered& j, const char* key) {
    const ordered& v = field_at(j, key);
    if (!v.is_number_unsigned())
        fail(Errc::parse_error, std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

void require_format(const ordered& j) {
    if (uint_at(j, "format") != 1)
        fail(Errc::parse_error, "unknown format version " + field_at(j, "format").dump());
}

ordered term_list(const Poly& f) {
    ordered arr = ordered::array();
    const auto& terms = f.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [exps, coeff] = *it;
        if (exps.back() != 0)
            fail(Errc::presentation_mismatch, "second deformation slot is never serialized");
        ordered t;
        t["coeff"] = coeff.str();
        t["exps"] = std::vector<std::uint64_t>(exps.begin(), exps.end() - 1);
        arr.push_back(std::move(t));
    }
    return arr;
}

Poly poly_from_terms(const FieldSpec& field, std::size_t nvars, const ordered& arr,
                     const char* what) {
    if (!arr.is_array()) fail(Errc::parse_error, std::string(what) + " must be a term array");
    Poly out = Poly::zero(field, nvars);
    for (const ordered& t : arr) {
        const ordered& coeff = field_at(t, "coeff");
        if (!coeff.is_string())
            fail(Errc::parse_error, std::string(what) + ": coefficient must be a string");
        const ordered& exps = field_at(t, "exps");
        if (!exps.is_array() || exps.size() != nvars + 1)
            fail(Errc::parse_error,
                 std::string(what) + ": exps must list the ring variables plus the U slot");
        Exponents full(nvars + 2, 0);
        for (std::size_t k = 0; k < nvars + 1; ++k) {
            if (!exps[k].is_number_unsigned())
                fail(Errc::parse_error,
                     std::string(what) + ": exponents must be nonnegative integers");
            full[k] = exps[k].get<std::uint64_t>();
        }
        out.add_term(full, Coeff::parse(field, coeff.get<std::string>()));
    }
    return out;
}

ordered ring_to_ordered(const PresPtr& pres) {
    if (!pres) fail(Errc::presentation_mismatch, "missing presentation");
    ordered j;
    j["format"] = 1;
    j["char"] = pres->field().characteristic;
    if (pres->kind() == RingKind::pham_brieskorn) {
        j["kind"] = "pham_brieskorn";
        j["tuple"] = pres->tuple();
        j["power"] = pres->power();
    } else {
        j["kind"] = "xr_plus_h";
    }
    j["relation"] = term_list(pres->relation());
    return j;
}

PresPtr ring_from_ordered(const ordered& j) {
    require_format(j);
    const FieldSpec field = make_field(uint_at(j, "char"));
    const ordered& kind = field_at(j, "kind");
    if (!kind.is_string()) fail(Errc::parse_error, "field \"kind\" must be a string");
    const std::string kind_name = kind.get<std::string>();

    if (kind_name == "pham_brieskorn") {
        const ordered& tuple_json = field_at(j, "tuple");
        if (!tuple_json.is_array() || tuple_json.empty())
            fail(Errc::parse_error, "field \"tuple\" must be a nonempty array");
        std::vector<std::uint64_t> tuple;
        for (const ordered& a : tuple_json) {
            if (!a.is_number_unsigned())
                fail(Errc::parse_error, "tuple entries must be nonnegative integers");
            tuple.push_back(a.get<std::uint64_t>());
        }
        const std::uint64_t power = j.contains("power") ? uint_at(j, "power") : 1;
        auto pres = RingPresentation::pham_brieskorn(field, tuple, power);
        if (j.contains("relation")) {
            const Poly stated =
                poly_from_terms(field, tuple.size(), j.at("relation"), "relation");
            if (stated != pres->relation())
                fail(Errc::parse_error, "stated relation does not match the tuple and power");
        }
        return pres;
    }
    if (kind_name == "xr_plus_h") {
        const ordered& rel_json = field_at(j, "relation");
        if (!rel_json.is_array() || rel_json.empty())
            fail(Errc::parse_error, "field \"relation\" must be a nonempty term array");
        const ordered& first_exps = field_at(rel_json.at(0), "exps");
        if (!first_exps.is_array() || first_exps.size() < 3)
            fail(Errc::parse_error, "relation terms need at least two ring variables");
        const std::size_t nvars = first_exps.size() - 1;
        const Poly relation = poly_from_terms(field, nvars, rel_json, "relation");
        const std::uint64_t r = relation.degree_in(0);
        if (r == 0) fail(Errc::parse_error, "relation must involve the first generator");
        Exponents lead(nvars + 2, 0);
        lead[0] = r;
        const Poly head = Poly::monomial(field, nvars, lead, Coeff::from_int(field, 1));
        return RingPresentation::xr_plus_h(field, nvars, r, relation - head);
    }
    fail(Errc::parse_error, "unknown kind \"" + kind_name + "\"");
}

ordered map_to_ordered(const ExpMap& map) {
    ordered j;
    j["format"] = 1;
    j["ring"] = ring_to_ordered(map.presentation());
    ordered images = ordered::array();
    for (const Poly& image : map.images()) images.push_back(term_list(image));
    j["images"] = std::move(images);
    return j;
}

ExpMap map_from_ordered(const ordered& j) {
    require_format(j);
    const PresPtr pres = ring_from_ordered(field_at(j, "ring"));
    const ordered& images_json = field_at(j, "images");
    if (!images_json.is_array() || images_json.size() != pres->nvars())
        fail(Errc::parse_error, "field \"images\" must list one term array per generator");
    std::vector<Poly> images;
    for (const ordered& arr : images_json)
        images.push_back(poly_from_terms(pres->field(), pres->nvars(), arr, "image"));
    return ExpMap(pres, images);
}

std::string render(const ordered& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string ring_to_json(const PresPtr& pres) { return render(ring_to_ordered(pres)); }

PresPtr ring_from_json(const std::string& text) { return ring_from_ordered(parse_text(text)); }

std::string map_to_json(const ExpMap& map) { return render(map_to_ordered(map)); }

ExpMap map_from_json(const std::string& text) { return map_from_ordered(parse_text(text)); }

std::string verdict_to_json(const Verdict& v) {
    ordered j;
    j["tuple"] = v.tuple;
    j["char"] = v.field.characteristic;
    j["traits"] = {{"algebraically_closed", v.field.algebraically_closed},
                   {"sqrt_minus_one", v.field.sqrt_minus_one}};
    j["status"] = status_name(v.status);
    j["rule"] = v.rule;
    j["citation"] = v.citation;
    if (v.witness) j["witness"] = map_to_ordered(*v.witness);
    j["notes"] = v.notes;
    return render(j);
}

}  // namespace pbrigid
