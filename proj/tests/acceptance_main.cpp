// Acceptance gate: ten end-to-end checks, one [PASS]/[FAIL] line each.
// Exit 0 only when every check passes.
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pbrigid/classify.hpp"
#include "pbrigid/grading.hpp"
#include "pbrigid/io.hpp"
#include "pbrigid/search.hpp"

namespace {

using namespace pbrigid;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_secs(double s) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1) << s << "s";
    return out.str();
}

Coeff random_nonzero(std::mt19937_64& rng, const FieldSpec& field) {
    if (field.characteristic == 0) {
        long long v = static_cast<long long>(rng() % 13) - 6;
        if (v == 0) v = 1;
        return Coeff::from_int(field, v);
    }
    return Coeff::from_int(field, 1 + static_cast<long long>(rng() % (field.characteristic - 1)));
}

Poly random_ambient(std::mt19937_64& rng, const FieldSpec& field, std::size_t nvars,
                    std::uint64_t max_degree) {
    Poly f = Poly::zero(field, nvars);
    const std::size_t nterms = 1 + rng() % 4;
    for (std::size_t t = 0; t < nterms; ++t) {
        Exponents e(nvars + 2, 0);
        std::uint64_t budget = max_degree;
        for (std::size_t slot = 0; slot < nvars; ++slot) {
            const std::uint64_t x = rng() % (budget + 1);
            e[slot] = x;
            budget -= x;
        }
        f.add_term(e, random_nonzero(rng, field));
    }
    return f;
}

bool nonrigid_rule(const Verdict& v) {
    return v.rule == "R1" || v.rule == "R2" || v.rule == "R3" || v.rule == "R4";
}

// Power-pair witnesses collected by check 1 and homogenized by check 6.
std::vector<ExpMap> grid_power_pair_witnesses;

bool check_witness_grid(std::string& detail) {
    const auto t0 = Clock::now();
    const std::uint64_t primes[] = {2, 3, 5, 7};
    std::size_t rows = 0, witnesses = 0, failures = 0;
    for (const std::uint64_t p : primes) {
        const auto field = make_field(p);
        for (std::uint64_t a = 1; a <= 12; ++a)
            for (std::uint64_t b = a; b <= 12; ++b)
                for (std::uint64_t c = b; c <= 12; ++c) {
                    ++rows;
                    const Verdict v = classify(field, {a, b, c});
                    if (!nonrigid_rule(v)) continue;
                    if (!v.witness) {
                        ++failures;
                        continue;
                    }
                    ++witnesses;
                    if (!v.witness->verify().ok || is_trivial(*v.witness)) ++failures;
                    if (v.rule == "R3") grid_power_pair_witnesses.push_back(*v.witness);
                }
    }
    const double secs = seconds_since(t0);
    detail = std::to_string(witnesses) + " witnesses over " + std::to_string(rows) +
             " rows, " + std::to_string(failures) + " failures, " + fmt_secs(secs);
    return failures == 0 && witnesses > 0 && secs < 300.0;
}

bool check_char_zero_table(std::string& detail) {
    const auto field = make_field(0, true);
    std::size_t rows = 0, mismatches = 0;
    for (std::uint64_t a = 2; a <= 9; ++a)
        for (std::uint64_t b = a; b <= 9; ++b)
            for (std::uint64_t c = b; c <= 9; ++c) {
                ++rows;
                const Verdict v = classify(field, {a, b, c});
                const bool expect_nonrigid = a == 2 && b == 2;
                if (expect_nonrigid != (v.status == RigidityStatus::non_rigid))
                    ++mismatches;
                else if (!expect_nonrigid && v.status != RigidityStatus::rigid &&
                         v.status != RigidityStatus::stably_rigid)
                    ++mismatches;
            }
    detail = std::to_string(rows) + " rows, " + std::to_string(mismatches) + " mismatches";
    return rows == 120 && mismatches == 0;
}

bool check_stable_rigidity(std::string& detail) {
    std::size_t bad = 0;
    const auto v1 = classify(make_field(0), {3, 3, 3});
    if (v1.status != RigidityStatus::stably_rigid) ++bad;
    const auto v2 = classify(make_field(2), {3, 3, 3});
    if (v2.status != RigidityStatus::stably_rigid) ++bad;
    const auto v3 = classify(make_field(0), {2, 4, 5});
    if (v3.status != RigidityStatus::stably_rigid) ++bad;
    const auto v4 = classify(make_field(0), {2, 3, 5});
    if (v4.status != RigidityStatus::rigid || v4.rule != "R6") ++bad;
    detail = "(3,3,3) over Q and F2, (2,4,5) over Q, (2,3,5) over Q -> " + v1.rule + " " +
             v2.rule + " " + v3.rule + " " + v4.rule;
    return bad == 0;
}

bool check_tamper_rejection(std::string& detail) {
    std::vector<ExpMap> pool;
    const std::pair<std::uint64_t, std::vector<std::uint64_t>> sources[] = {
        {2, {2, 3, 4}}, {3, {3, 5, 6}}, {5, {2, 2, 3}}, {2, {2, 4, 6}},
        {0, {1, 5, 9}}, {5, {2, 5, 5}}, {3, {2, 3, 9}}, {7, {1, 2, 2}},
    };
    for (const auto& [p, tuple] : sources) {
        const Verdict v = classify(make_field(p), tuple);
        if (!v.witness) {
            detail = "no witness to tamper with for one of the source tuples";
            return false;
        }
        pool.push_back(*v.witness);
    }

    std::mt19937_64 rng(416524);
    std::size_t false_accepts = 0, misnamed = 0;
    std::size_t named_w = 0, named_e = 0, named_c = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const ExpMap& base = pool[trial % pool.size()];
        const PresPtr& pres = base.presentation();
        const auto& field = pres->field();
        const std::size_t n = pres->nvars();

        std::vector<Poly> images;
        const auto tampered_differs = [&] {
            for (std::size_t k = 0; k < n; ++k)
                if (pres->normal_form(images[k]) != base.image(k)) return true;
            return false;
        };
        do {
            images = base.images();
            Poly& img = images[rng() % n];
            if (img.is_zero()) continue;
            std::vector<std::pair<Exponents, Coeff>> ts(img.terms().begin(), img.terms().end());
            const auto& [exps, coeff] = ts[rng() % ts.size()];
            const int op = static_cast<int>(rng() % 3);
            if (op == 0) {  // drop the term
                img.add_term(exps, -coeff);
            } else if (op == 1) {  // perturb the coefficient
                img.add_term(exps, Coeff::from_int(field, 1 + static_cast<long long>(rng() % 3)));
            } else {  // swap two exponent slots, never the second deformation slot
                Exponents moved = exps;
                std::swap(moved[rng() % (n + 1)], moved[rng() % (n + 1)]);
                if (moved == exps) continue;
                img.add_term(exps, -coeff);
                img.add_term(moved, coeff);
            }
        } while (!tampered_differs());

        const ExpMap tampered(pres, images);
        const VerifyReport& rep = tampered.verify();
        if (rep.ok) {
            ++false_accepts;
            continue;
        }

        // Re-derive the named axiom's identity from scratch.
        bool named_correctly = false;
        const std::size_t g = rep.failed_generator;
        switch (*rep.failed_axiom) {
            case Axiom::well_definedness:
                ++named_w;
                named_correctly =
                    !pres->normal_form(pres->relation().substitute(images)).is_zero();
                break;
            case Axiom::counit:
                ++named_e;
                named_correctly = pres->normal_form(images[g].set_u_to_zero()) !=
                                  pres->normal_form(Poly::variable(field, n, g));
                break;
            case Axiom::comultiplication: {
                ++named_c;
                std::vector<Poly> v_images;
                for (const Poly& im : images) v_images.push_back(im.rename_u_to_v());
                const Poly lhs = pres->normal_form(images[g].substitute(v_images));
                std::vector<Poly> u_shift;
                for (std::size_t k = 0; k < n; ++k) u_shift.push_back(Poly::variable(field, n, k));
                u_shift.push_back(Poly::u(field, n) + Poly::v(field, n));
                const Poly rhs = pres->normal_form(images[g].substitute(u_shift));
                named_correctly = lhs != rhs;
                break;
            }
        }
        if (!named_correctly) ++misnamed;
    }
    detail = "50 tamperings, " + std::to_string(false_accepts) + " false accepts, " +
             std::to_string(misnamed) + " misnamed; axioms W*" + std::to_string(named_w) +
             " E*" + std::to_string(named_e) + " C*" + std::to_string(named_c);
    return false_accepts == 0 && misnamed == 0;
}

bool check_degree_additivity(std::string& detail) {
    std::size_t pairs = 0, failures = 0;
    for (const std::uint64_t p : {std::uint64_t(7), std::uint64_t(0)}) {
        const auto field = make_field(p);
        const auto pres = RingPresentation::pham_brieskorn(field, {2, 3, 5});
        const WeightVector w = standard_grading(pres);
        const auto graded = associated_graded(pres, w);
        const ExpMap id = identity_map(pres);
        std::mt19937_64 rng(900 + p);
        int done = 0;
        while (done < 200) {
            const Poly fn = pres->normal_form(random_ambient(rng, field, 3, 6));
            const Poly gn = pres->normal_form(random_ambient(rng, field, 3, 6));
            if (fn.is_zero() || gn.is_zero()) continue;
            ++done;
            ++pairs;
            const Poly prod = pres->normal_form(fn * gn);
            const auto df = fn.weighted_degree(w), dg = gn.weighted_degree(w);
            const auto dp = prod.weighted_degree(w);
            if (!df || !dg || !dp || *dp != *df + *dg) ++failures;
            const auto uf = phi_degree(id, fn), ug = phi_degree(id, gn);
            const auto up = phi_degree(id, prod);
            if (!uf || !ug || !up || *up != *uf + *ug) ++failures;
            const RingElement sf = principal_symbol(graded, make_element(pres, fn), w);
            const RingElement sg = principal_symbol(graded, make_element(pres, gn), w);
            const RingElement sp = principal_symbol(graded, make_element(pres, prod), w);
            if (sp != sf * sg) ++failures;
        }
    }
    detail = std::to_string(pairs) + " pairs over F7 and Q, " + std::to_string(failures) +
             " violations";
    return pairs == 400 && failures == 0;
}

bool check_homogenization(std::string& detail) {
    std::size_t checked = 0, failures = 0;
    for (const ExpMap& map : grid_power_pair_witnesses) {
        const PresPtr& pres = map.presentation();
        const std::size_t n = pres->nvars();
        const WeightVector w = standard_grading(pres);
        const HomogenizationReport rep = homogenize_map(map, w);
        if (rep.outcome == HomogenizeOutcome::candidate_verification_failed || !rep.result ||
            !rep.result->verify().ok || is_trivial(*rep.result)) {
            ++failures;
            continue;
        }
        const ExpMap& hm = *rep.result;

        bool isobaric = true;
        for (std::size_t i = 0; i < n && isobaric; ++i) {
            const Poly& img = hm.image(i);
            for (std::uint64_t j = 0; j <= img.degree_in(pres->nvars()); ++j) {
                const Poly c = img.coefficient_of_u(j);
                if (c.is_zero()) continue;
                const mpq_class want = mpq_class(static_cast<long>(w.weights[i])) +
                                       mpq_class(static_cast<unsigned long>(j)) * rep.slope;
                if (!c.is_homogeneous(w) || *c.weighted_degree(w) != want) {
                    isobaric = false;
                    break;
                }
            }
        }
        if (!isobaric) {
            ++failures;
            continue;
        }

        const auto graded = associated_graded(pres, w);
        for (std::size_t k = 0; k < n; ++k) {
            if (map.image(k) != pres->normal_form(Poly::variable(pres->field(), n, k))) continue;
            const RingElement sym = principal_symbol(graded, generator(pres, k), w);
            if (apply_map(hm, sym.nf()) != sym.nf()) ++failures;
        }
        ++checked;
    }
    detail = std::to_string(checked) + " of " + std::to_string(grid_power_pair_witnesses.size()) +
             " grid witnesses homogenized, " + std::to_string(failures) + " failures";
    return !grid_power_pair_witnesses.empty() && failures == 0;
}

bool check_search_cross(std::string& detail) {
    bool ok = true;
    SearchBounds named;
    named.max_u_degree = 2;
    named.max_total_degree = 1;

    auto t0 = Clock::now();
    const auto r1 = cross_check({2, 3, 4}, 2, named);
    const double s1 = seconds_since(t0);
    ok = ok && r1.flag == CrossCheckFlag::confirmed && s1 < 60.0;

    t0 = Clock::now();
    const auto r2 = cross_check({3, 3, 3}, 2, named);
    const double s2 = seconds_since(t0);
    ok = ok && r2.flag == CrossCheckFlag::consistent && r2.found == 0 && s2 < 600.0;

    t0 = Clock::now();
    const auto r3 = cross_check({2, 3, 7}, 5, named);
    const double s3 = seconds_since(t0);
    ok = ok && r3.flag == CrossCheckFlag::consistent && r3.found == 0 && s3 < 600.0;

    // Sweep the searchable part of the grid: one U-layer, degree-one shapes,
    // small fields, refusals skipped. The classifier must never be refuted.
    SearchBounds sweep;
    sweep.max_u_degree = 1;
    sweep.max_total_degree = 1;
    sweep.ceiling = std::uint64_t(1) << 16;
    std::size_t swept = 0, skipped = 0, contradictions = 0;
    const std::uint64_t primes[] = {2, 3, 5};
    for (const std::uint64_t p : primes)
        for (std::uint64_t a = 1; a <= 12; ++a)
            for (std::uint64_t b = a; b <= 12; ++b)
                for (std::uint64_t c = b; c <= 12; ++c) {
                    try {
                        const auto r = cross_check({a, b, c}, p, sweep);
                        ++swept;
                        if (r.flag == CrossCheckFlag::contradiction) ++contradictions;
                    } catch (const Error& e) {
                        if (e.code() != Errc::search_space_too_large) throw;
                        ++skipped;
                    }
                }
    ok = ok && contradictions == 0 && swept > 0;

    detail = std::string(cross_check_flag_name(r1.flag)) + " in " + fmt_secs(s1) + ", " +
             cross_check_flag_name(r2.flag) + " in " + fmt_secs(s2) + ", " +
             cross_check_flag_name(r3.flag) + " in " + fmt_secs(s3) + "; sweep " +
             std::to_string(swept) + " tuples, " + std::to_string(skipped) + " refused, " +
             std::to_string(contradictions) + " contradictions";
    return ok;
}

bool check_special_forms(std::string& detail) {
    std::mt19937_64 rng(4168);
    std::size_t failures = 0;
    for (const std::uint64_t p : {std::uint64_t(5), std::uint64_t(0)}) {
        const auto field = make_field(p);
        for (int t = 0; t < 10; ++t) {
            Poly tail = Poly::zero(field, 3);
            for (std::uint64_t e = 0; e <= 5; ++e)
                if (rng() % 2) tail.add_term({0, e, 0, 0, 0}, random_nonzero(rng, field));
            if (tail.is_zero()) tail.add_term({0, 1, 0, 0, 0}, Coeff::from_int(field, 1));
            const Verdict v = classify_monomial_surface(field, 3, 2, 2, tail);
            if (v.status != RigidityStatus::rigid || v.rule != "S1") ++failures;
        }
    }
    const auto closed = make_field(0, true);
    for (int t = 0; t < 5; ++t) {
        const long long num = static_cast<long long>(rng() % 19) - 9;
        const std::string text =
            std::to_string(num == 0 ? 1 : num) + "/" + std::to_string(1 + rng() % 9);
        const Coeff lambda = Coeff::parse(closed, text);
        const Verdict v = classify_translate(closed, 2, 3, 5, lambda);
        if (v.status != RigidityStatus::rigid || v.rule != "S2") ++failures;
    }
    detail = "20 monomial-surface tails and 5 translates, " + std::to_string(failures) +
             " failures";
    return failures == 0;
}

bool check_frobenius_restriction(std::string& detail) {
    const std::pair<std::uint64_t, std::vector<std::uint64_t>> cases[] = {
        {2, {3, 2, 4}}, {2, {3, 2, 8}}, {2, {3, 4, 8}}, {2, {5, 2, 4}}, {2, {3, 2, 2}},
        {3, {2, 3, 9}}, {3, {4, 3, 9}}, {3, {2, 3, 3}}, {5, {3, 5, 25}}, {5, {2, 5, 5}},
    };
    std::size_t restricted = 0, failures = 0;
    for (const auto& [p, tuple] : cases) {
        const Verdict v = classify(make_field(p), tuple);
        if (v.rule != "R3" || !v.witness) {
            ++failures;
            continue;
        }
        try {
            const RestrictionResult res = restrict_to_frobenius_subring(*v.witness);
            if (!res.map.verify().ok || res.trivial)
                ++failures;
            else
                ++restricted;
        } catch (const Error& e) {
            ++failures;  // ImageNotInSubring in particular must never surface
        }
    }
    detail = std::to_string(restricted) + " of 10 witnesses restricted, " +
             std::to_string(failures) + " failures";
    return restricted == 10 && failures == 0;
}

bool check_serialization(std::string& detail) {
    std::mt19937_64 rng(41610);
    const std::uint64_t chars[] = {0, 2, 3, 5, 7};
    std::size_t files = 0, mismatches = 0;

    const auto random_pb = [&](std::uint64_t power_cap) {
        const auto field = make_field(chars[rng() % 5]);
        const std::size_t n = 3 + rng() % 2;
        std::vector<std::uint64_t> tuple;
        for (std::size_t i = 0; i < n; ++i) tuple.push_back(1 + rng() % 9);
        return RingPresentation::pham_brieskorn(field, tuple, 1 + rng() % power_cap);
    };

    for (int t = 0; t < 40; ++t) {
        const auto pres = random_pb(3);
        const std::string text = ring_to_json(pres);
        if (ring_to_json(ring_from_json(text)) != text) ++mismatches;
        ++files;
    }
    for (int t = 0; t < 20; ++t) {
        const auto field = make_field(chars[rng() % 5]);
        Poly h = Poly::zero(field, 3);
        const std::size_t nterms = 1 + rng() % 3;
        for (std::size_t k = 0; k < nterms; ++k)
            h.add_term({0, rng() % 5, 1 + rng() % 4, 0, 0}, random_nonzero(rng, field));
        if (h.is_zero()) h.add_term({0, 1, 1, 0, 0}, Coeff::from_int(field, 1));
        const auto pres = RingPresentation::xr_plus_h(field, 3, 2 + rng() % 4, h);
        const std::string text = ring_to_json(pres);
        if (ring_to_json(ring_from_json(text)) != text) ++mismatches;
        ++files;
    }
    for (int t = 0; t < 40; ++t) {
        const auto pres = random_pb(1);
        const auto& field = pres->field();
        const std::size_t n = pres->nvars();
        std::vector<Poly> images;
        for (std::size_t i = 0; i < n; ++i) {
            Poly img = Poly::variable(field, n, i);
            const std::size_t extra = rng() % 3;
            for (std::size_t k = 0; k < extra; ++k) {
                Exponents e(n + 2, 0);
                for (std::size_t slot = 0; slot < n; ++slot) e[slot] = rng() % 3;
                e[n] = rng() % 4;
                img.add_term(e, random_nonzero(rng, field));
            }
            images.push_back(img);
        }
        const ExpMap map(pres, images);
        const std::string text = map_to_json(map);
        if (map_to_json(map_from_json(text)) != text) ++mismatches;
        ++files;
    }
    detail = std::to_string(files) + " files, " + std::to_string(mismatches) +
             " round-trip mismatches";
    return files == 100 && mismatches == 0;
}

}  // namespace

int main() {
    struct Check {
        const char* label;
        bool (*run)(std::string&);
    };
    const Check checks[] = {
        {"positive-characteristic witness grid verifies and is nontrivial", check_witness_grid},
        {"characteristic-zero verdicts match the expected nonrigid set", check_char_zero_table},
        {"stable rigidity fires exactly on the boundary tuples", check_stable_rigidity},
        {"tampered witness files are rejected with a correctly named axiom",
         check_tamper_rejection},
        {"degree functions are additive on a rigid threefold", check_degree_additivity},
        {"homogenized witnesses verify, stay isobaric, and fix invariant symbols",
         check_homogenization},
        {"bounded search agrees with the classifier", check_search_cross},
        {"monomial surfaces and translates classify rigid", check_special_forms},
        {"power-pair witnesses restrict to the Frobenius subring",
         check_frobenius_restriction},
        {"ring and map files round-trip byte-identically", check_serialization},
    };

    int failures = 0;
    int index = 0;
    for (const Check& check : checks) {
        ++index;
        std::string detail;
        bool ok = false;
        try {
            ok = check.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << index << ". " << check.label;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n" << std::flush;
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
