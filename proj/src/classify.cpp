#include "pbrigid/classify.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pbrigid/error.hpp"

namespace pbrigid {

namespace {

// a = s * p^e with p not dividing s; returns {e, s}.
std::pair<std::uint64_t, std::uint64_t> split_p_part(std::uint64_t p, std::uint64_t a) {
    std::uint64_t e = 0;
    while (p >= 2 && a % p == 0) {
        a /= p;
        ++e;
    }
    return {e, a};
}

std::uint64_t tuple_gcd(const std::vector<std::uint64_t>& tuple) {
    std::uint64_t g = 0;
    for (std::uint64_t a : tuple) g = std::gcd(g, a);
    return g;
}

void require_tuple(const std::vector<std::uint64_t>& tuple) {
    if (tuple.size() < 3) fail(Errc::invalid_tuple, "need at least three exponents");
    for (std::uint64_t a : tuple)
        if (a == 0) fail(Errc::invalid_tuple, "exponents must be positive");
}

std::string tuple_str(const std::vector<std::uint64_t>& tuple) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) os << ',';
        os << tuple[i];
    }
    os << ')';
    return os.str();
}

// Decomposition behind the stable-rigidity rule: one entry prime to p, the
// unit parts s2, s3 of the other two, with 1/a + 1/s2 + 1/s3 <= 1.
struct StableSplit {
    std::uint64_t a = 0, s2 = 0, s3 = 0, r = 0, e = 0;
};

std::optional<StableSplit> stable_split(std::uint64_t p, const std::vector<std::uint64_t>& t) {
    for (std::size_t i = 0; i < 3; ++i) {
        std::uint64_t a = t[i];
        if (p >= 2 && a % p == 0) continue;
        auto [r, s2] = split_p_part(p, t[(i + 1) % 3]);
        auto [e, s3] = split_p_part(p, t[(i + 2) % 3]);
        mpz_class za(static_cast<unsigned long>(a));
        mpz_class z2(static_cast<unsigned long>(s2));
        mpz_class z3(static_cast<unsigned long>(s3));
        if (z2 * z3 + za * z3 + za * z2 <= za * z2 * z3) return StableSplit{a, s2, s3, r, e};
    }
    return std::nullopt;
}

Verdict base_verdict(const FieldSpec& field, const std::vector<std::uint64_t>& tuple) {
    Verdict v;
    v.tuple = tuple;
    v.field = field;
    return v;
}

}  // namespace

const char* status_name(RigidityStatus s) {
    switch (s) {
        case RigidityStatus::rigid: return "Rigid";
        case RigidityStatus::stably_rigid: return "StablyRigid";
        case RigidityStatus::non_rigid: return "NonRigid";
        case RigidityStatus::non_domain_non_rigid: return "NonDomainNonRigid";
        case RigidityStatus::unknown: return "Unknown";
    }
    return "Unknown";
}

SetMembership membership(const FieldSpec& field, const std::vector<std::uint64_t>& tuple) {
    require_tuple(tuple);
    const std::uint64_t p = field.characteristic;
    SetMembership m;
    m.in_F = (p == 0) || (tuple_gcd(tuple) % p != 0);

    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i] == 1) {
            m.unit_index = i;
            break;
        }
    }
    for (std::size_t i = 0; !m.square_pair && i < tuple.size(); ++i) {
        if (tuple[i] != 2) continue;
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
            if (tuple[j] == 2) {
                m.square_pair = {i, j};
                break;
            }
        }
    }
    m.in_T = m.unit_index.has_value() || m.square_pair.has_value();

    if (p >= 2) {
        for (std::size_t i = 0; !m.power_pair && i < tuple.size(); ++i) {
            auto [r, s] = split_p_part(p, tuple[i]);
            if (s != 1 || r == 0) continue;
            for (std::size_t j = 0; j < tuple.size(); ++j) {
                if (j == i) continue;
                auto [e, sj] = split_p_part(p, tuple[j]);
                if (e >= r) {
                    m.power_pair = {i, j};
                    m.power_pair_r = r;
                    m.power_pair_s = sj;
                    m.power_pair_e = e;
                    break;
                }
            }
        }
    }
    m.in_R = m.unit_index.has_value() || m.power_pair.has_value();

    if (tuple.size() == 3 && p >= 3) {
        static constexpr std::size_t perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& perm : perms) {
            if (tuple[perm[0]] != 2) continue;
            std::uint64_t b = tuple[perm[1]], c = tuple[perm[2]];
            if (b % 2 != 0 || c % 2 != 0) continue;
            std::uint64_t mm = b / 2;
            if (mm <= 1 || mm % p == 0) continue;
            auto [e, s] = split_p_part(p, c / 2);
            if (s != 1 || e == 0) continue;
            m.in_S3 = true;
            m.s3_m = mm;
            m.s3_e = e;
            break;
        }
    }
    return m;
}

Verdict classify(const FieldSpec& field, const std::vector<std::uint64_t>& tuple) {
    require_tuple(tuple);
    const std::uint64_t p = field.characteristic;
    const SetMembership mem = membership(field, tuple);
    Verdict v = base_verdict(field, tuple);

    if (p >= 2 && !mem.in_F) {
        auto [t, base_gcd] = split_p_part(p, tuple_gcd(tuple));
        (void)base_gcd;
        std::uint64_t q = 1;
        for (std::uint64_t k = 0; k < t; ++k) q *= p;
        std::vector<std::uint64_t> base = tuple;
        for (std::uint64_t& a : base) a /= q;
        auto pres = RingPresentation::pham_brieskorn(field, base, q);
        v.status = RigidityStatus::non_domain_non_rigid;
        v.rule = "R1";
        v.citation =
            "the characteristic divides every exponent, so the relation is the " +
            std::to_string(q) +
            "-th power of a lower-degree relation; the ring is not a domain, and moving one "
            "generator along the base relation is a nontrivial exponential map";
        v.witness = construct_on_power_relation(pres);
        v.notes.push_back("witness lives on the factored presentation with tuple " +
                          tuple_str(base) + " and power " + std::to_string(q));
        return v;
    }

    if (mem.unit_index) {
        std::size_t i = *mem.unit_index;
        std::size_t j = (i == 0) ? 1 : 0;
        auto pres = RingPresentation::pham_brieskorn(field, tuple);
        v.status = RigidityStatus::non_rigid;
        v.rule = "R2";
        v.citation =
            "an exponent equal to 1 makes the relation linear in that generator, which can "
            "then absorb a translation of another generator; the translation is a nontrivial "
            "exponential map";
        v.witness = construct_from_unit_exponent(pres, i, j);
        return v;
    }

    if (p >= 2 && mem.power_pair) {
        auto [i, j] = *mem.power_pair;
        auto pres = RingPresentation::pham_brieskorn(field, tuple);
        v.status = RigidityStatus::non_rigid;
        v.rule = "R3";
        v.citation =
            "one exponent is the pure power " + std::to_string(p) + "^" +
            std::to_string(mem.power_pair_r) + " and another has " + std::to_string(p) +
            "-adic valuation at least " + std::to_string(mem.power_pair_r) +
            "; translating the second generator and extracting the matching power root of the "
            "shift gives a nontrivial exponential map";
        v.witness = construct_from_p_power_pair(pres, i, j);
        return v;
    }

    if (mem.square_pair && field.sqrt_minus_one) {
        auto [i, j] = *mem.square_pair;
        auto pres = RingPresentation::pham_brieskorn(field, tuple);
        v.status = RigidityStatus::non_rigid;
        v.rule = "R4";
        v.citation =
            "two exponents equal 2 and sqrt(-1) lies in the field, so the quadratic part "
            "splits as a product of two linear forms; sliding the remaining generators along "
            "one factor is a nontrivial exponential map";
        if (p == 2) {
            v.witness = construct_from_p_power_pair(pres, i, j);
        } else if (concrete_sqrt_minus_one(field)) {
            v.witness = construct_from_two_squares(pres, i, j);
        } else {
            v.notes.push_back(
                "sqrt(-1) is only declared as a field trait and has no concrete value here, "
                "so no witness map is materialized");
        }
        return v;
    }

    if (tuple.size() == 3) {
        if (auto split = stable_split(p, tuple)) {
            v.status = RigidityStatus::stably_rigid;
            v.rule = "R5";
            std::ostringstream cite;
            if (p == 0)
                cite << "the tuple is (a, s2, s3) = (" << split->a << ", " << split->s2 << ", "
                     << split->s3 << ")";
            else
                cite << "the tuple splits as (a, s2*p^r, s3*p^e) = (" << split->a << ", "
                     << split->s2 << "*" << p << "^" << split->r << ", " << split->s3 << "*" << p
                     << "^" << split->e << ")";
            cite << " with 1/" << split->a << " + 1/" << split->s2 << " + 1/" << split->s3
                 << " <= 1; every exponential map on every polynomial extension of the ring "
                    "fixes the ring";
            v.citation = cite.str();
            return v;
        }
        if (mem.in_F && !mem.in_R && !mem.in_T && !mem.in_S3) {
            v.status = RigidityStatus::rigid;
            v.rule = "R6";
            v.citation =
                "a three-variable domain tuple with no unit exponent, no two squares, no "
                "power pair for the characteristic, and outside the (2, 2m, 2*p^e) family "
                "admits no nontrivial exponential map";
            return v;
        }
        if (mem.square_pair && p != 2 && !field.sqrt_minus_one && !field.algebraically_closed) {
            auto [i, j] = *mem.square_pair;
            std::uint64_t c = tuple[3 - i - j];
            if (c > 1 && c % 2 == 1) {
                v.status = RigidityStatus::rigid;
                v.rule = "R7";
                v.citation =
                    "for (2, 2, " + std::to_string(c) +
                    ") with odd third exponent over a field without sqrt(-1), the quadratic "
                    "part stays irreducible and no nontrivial exponential map exists";
                return v;
            }
        }
    }

    v.status = RigidityStatus::unknown;
    v.rule = "R8";
    v.citation = "no classification rule applies";
    if (mem.in_S3)
        v.notes.push_back("the tuple permutes to (2, 2m, 2*p^e) with m = " +
                          std::to_string(mem.s3_m) + ", e = " + std::to_string(mem.s3_e) +
                          "; this family is unresolved");
    if (mem.square_pair && !field.sqrt_minus_one && !mem.in_S3 && tuple.size() == 3)
        v.notes.push_back(
            "two exponents equal 2 but sqrt(-1) is not available, and the even third "
            "exponent escapes the odd-exponent rigidity rule");
    if (tuple.size() > 3)
        v.notes.push_back("tuples with more than three entries are only classified when a "
                          "non-rigidity rule fires");
    return v;
}

Verdict classify_monomial_surface(const FieldSpec& field, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t c, const std::optional<Poly>& y_tail) {
    if (a == 0 || b == 0 || c == 0) fail(Errc::invalid_tuple, "exponents must be positive");
    if (y_tail) {
        if (y_tail->field() != field || y_tail->nvars() != 3)
            fail(Errc::presentation_mismatch, "tail must be a three-variable polynomial");
        for (const auto& [exps, coeff] : y_tail->terms()) {
            (void)coeff;
            if (exps[0] != 0 || exps[2] != 0 || exps[3] != 0 || exps[4] != 0)
                fail(Errc::invalid_relation, "tail may only involve the second generator");
        }
    }
    Verdict v = base_verdict(field, {a, b, c});
    v.rule = "S1";
    const std::uint64_t g = std::gcd(std::gcd(a, b), c);
    if (a >= 2 && b >= 2 && c >= 2 && g == 1) {
        v.status = RigidityStatus::rigid;
        v.citation =
            "X^" + std::to_string(a) + " + Y^" + std::to_string(b) + " Z^" + std::to_string(c) +
            " carries two gradings, one with weight zero on Y and one with weight zero on Z; "
            "with all exponents at least 2 and gcd(" + std::to_string(a) + ", " +
            std::to_string(b) + ", " + std::to_string(c) +
            ") = 1 any exponential map is homogeneous for both and fixes the ring";
    } else {
        v.status = RigidityStatus::unknown;
        v.citation = "the two-grading argument needs all exponents at least 2 and coprime "
                     "exponent gcd";
    }
    if (y_tail)
        v.notes.push_back("a tail depending only on Y does not change the verdict");
    return v;
}

Verdict classify_translate(const FieldSpec& field, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c, const Coeff& lambda) {
    if (lambda.characteristic() != field.characteristic)
        fail(Errc::presentation_mismatch, "translation constant from a different field");
    Verdict base = classify(field, {a, b, c});
    Verdict v = base_verdict(field, {a, b, c});
    v.rule = "S2";
    const bool rigid_base = base.status == RigidityStatus::rigid ||
                            base.status == RigidityStatus::stably_rigid;
    const SetMembership mem = membership(field, {a, b, c});
    if (rigid_base && mem.in_F) {
        v.status = RigidityStatus::rigid;
        v.citation =
            "the diagonal tuple (" + std::to_string(a) + "," + std::to_string(b) + "," +
            std::to_string(c) +
            ") is rigid (" + base.rule +
            "), and translating the relation by a constant preserves rigidity of the "
            "level surface";
        v.notes.push_back("lambda = " + lambda.str());
    } else {
        v.status = RigidityStatus::unknown;
        v.citation = "the translate inherits rigidity only from a rigid diagonal tuple; the "
                     "base verdict here is " +
                     std::string(status_name(base.status));
    }
    return v;
}

FixingVerdict no_map_fixing(const FieldSpec& field, const MixedThreefold& form,
                            FixedGenerator generator) {
    const std::uint64_t p = field.characteristic;
    FixingVerdict out;
    if (p == 0) {
        out.citation = "the mixed threefold criteria need positive characteristic";
        return out;
    }
    if (form.m == 0 || form.n == 0 || form.q == 0 || form.q % p == 0 || form.r == 0 ||
        form.e <= form.r) {
        out.citation = "the presentation hypotheses fail: need m, n, q >= 1, p not dividing q, "
                       "and e > r >= 1";
        return out;
    }
    const std::uint64_t mn_gcd = std::gcd(form.m, form.n);
    switch (generator) {
        case FixedGenerator::x:
            out.citation = "no criterion covers maps fixing X on this form";
            return out;
        case FixedGenerator::y:
            if (form.m % p != 0 && form.m >= 2 && form.q >= 2) {
                out.excluded = true;
                out.citation =
                    "no nontrivial exponential map fixes Y: the X-exponent " +
                    std::to_string(form.m) + " is at least 2 and prime to " + std::to_string(p) +
                    ", and the T-exponent unit part " + std::to_string(form.q) +
                    " is at least 2";
            } else {
                out.citation = "fixing Y needs m >= 2 prime to p and q >= 2";
            }
            return out;
        case FixedGenerator::t:
            if (form.m >= 2 && form.n >= 2 && mn_gcd % p != 0) {
                out.excluded = true;
                out.citation = "no nontrivial exponential map fixes T: both monomial exponents "
                               "are at least 2 and their gcd is prime to " +
                               std::to_string(p);
            } else {
                out.citation = "fixing T needs m, n >= 2 with gcd(m, n) prime to p";
            }
            return out;
        case FixedGenerator::z:
            if (form.m >= 2 && form.n >= 2 && mn_gcd % p != 0 && std::gcd(mn_gcd, form.q) == 1) {
                out.excluded = true;
                out.citation = "no nontrivial exponential map fixes Z: both monomial exponents "
                               "are at least 2 and their gcd is prime to both " +
                               std::to_string(p) + " and " + std::to_string(form.q);
            } else {
                out.citation = "fixing Z needs m, n >= 2 with gcd(m, n) prime to p and to q";
            }
            return out;
    }
    out.citation = "unreachable";
    return out;
}

FixingVerdict no_map_fixing(const FieldSpec& field, const std::vector<std::uint64_t>& tuple,
                            std::size_t fixed_index) {
    if (tuple.size() != 4) fail(Errc::invalid_tuple, "need exactly four exponents");
    require_tuple(tuple);
    if (fixed_index >= 4) fail(Errc::invalid_tuple, "fixed generator index out of range");
    const std::uint64_t p = field.characteristic;
    FixingVerdict out;
    if (p == 0) {
        out.citation = "the four-variable criterion is stated for positive characteristic";
        return out;
    }
    const SetMembership mem4 = membership(field, tuple);
    if (!mem4.in_F || mem4.in_R || mem4.in_T) {
        out.citation = "the criterion needs a domain tuple with no unit exponent, no two "
                       "squares, and no power pair for the characteristic";
        return out;
    }
    std::vector<std::uint64_t> rest;
    for (std::size_t i = 0; i < 4; ++i)
        if (i != fixed_index) rest.push_back(tuple[i]);

    const SetMembership mem3 = membership(field, rest);
    if (mem3.in_F && !mem3.in_S3) {
        out.excluded = true;
        out.citation = "no nontrivial exponential map fixes generator " +
                       std::to_string(fixed_index + 1) + ": the remaining exponents " +
                       tuple_str(rest) +
                       " form a domain tuple outside the (2, 2m, 2*p^e) family";
        return out;
    }

    // Divided case: arrange the other three entries with non-decreasing p-adic
    // valuation and strip the smallest power; the reduced tuple must avoid T3
    // and S3.
    std::sort(rest.begin(), rest.end());
    do {
        auto [vm, s2] = split_p_part(p, rest[0]);
        auto [vr, s3] = split_p_part(p, rest[1]);
        auto [ve, s4] = split_p_part(p, rest[2]);
        if (vm > vr || vr > ve) continue;
        std::uint64_t qr = 1, qe = 1;
        for (std::uint64_t k = vm; k < vr; ++k) qr *= p;
        for (std::uint64_t k = vm; k < ve; ++k) qe *= p;
        std::vector<std::uint64_t> reduced = {s2, s3 * qr, s4 * qe};
        const SetMembership memr = membership(field, reduced);
        if (memr.in_F && !memr.in_T && !memr.in_S3) {
            out.excluded = true;
            out.citation = "no nontrivial exponential map fixes generator " +
                           std::to_string(fixed_index + 1) +
                           ": after dividing the other exponents by " + std::to_string(p) + "^" +
                           std::to_string(vm) + " they reduce to " + tuple_str(reduced) +
                           ", a domain tuple with no unit exponent, no two squares, and "
                           "outside the (2, 2m, 2*p^e) family";
            return out;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));

    out.citation = "the remaining exponents fall outside both the direct and the divided case";
    return out;
}

}  // namespace pbrigid
