#include "pbrigid/expmap.hpp"

#include <sstream>
#include <stdexcept>

namespace pbrigid {

namespace {

// Splits a as s * p^e with p not dividing s; e == 0 when p does not divide a.
std::pair<std::uint64_t, std::uint64_t> split_p_part(std::uint64_t p, std::uint64_t a) {
    std::uint64_t e = 0;
    while (p > 1 && a % p == 0) {
        a /= p;
        ++e;
    }
    return {e, a};
}

std::uint64_t pow_u64(std::uint64_t base, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = checked_mul_exp(r, base);
    return r;
}

void require_pham_brieskorn(const PresPtr& pres) {
    if (pres->kind() != RingKind::pham_brieskorn)
        fail(Errc::presentation_mismatch,
             "construction needs a Pham-Brieskorn presentation");
}

void require_index(const PresPtr& pres, std::size_t i) {
    if (i >= pres->nvars()) fail(Errc::invalid_tuple, "generator index out of range");
}

void require_distinct(std::size_t i, std::size_t j) {
    if (i == j) fail(Errc::decomposition_failure, "construction needs two distinct generators");
}

ExpMap finish_construction(PresPtr pres, std::vector<Poly> images, const char* what) {
    ExpMap map(std::move(pres), std::move(images));
    const VerifyReport& rep = map.verify();
    if (!rep.ok)
        throw std::logic_error(std::string(what) + ": constructed map failed verification: " +
                               rep.detail);
    return map;
}

std::vector<Poly> identity_images(const PresPtr& pres) {
    std::vector<Poly> images;
    images.reserve(pres->nvars());
    for (std::size_t k = 0; k < pres->nvars(); ++k)
        images.push_back(Poly::variable(pres->field(), pres->nvars(), k));
    return images;
}

// Base of the relation: X1^a1 + ... + Xn^an for the stored tuple.
Poly relation_base(const PresPtr& pres) {
    const FieldSpec& field = pres->field();
    std::size_t n = pres->nvars();
    Poly g = Poly::zero(field, n);
    for (std::size_t l = 0; l < n; ++l) {
        Exponents e(n + 2, 0);
        e[l] = pres->tuple()[l];
        g.add_term(e, Coeff::from_int(field, 1));
    }
    return g;
}

}  // namespace

const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::well_definedness: return "well-definedness";
        case Axiom::counit: return "counit";
        case Axiom::comultiplication: return "comultiplication";
    }
    return "?";
}

ExpMap::ExpMap(PresPtr pres, std::vector<Poly> images) : pres_(std::move(pres)) {
    if (images.size() != pres_->nvars())
        fail(Errc::arity_mismatch, "expected one image per generator");
    images_.reserve(images.size());
    for (const Poly& img : images) {
        if (!(img.field() == pres_->field()))
            fail(Errc::field_mismatch, "image field does not match the presentation");
        if (img.nvars() != pres_->nvars())
            fail(Errc::arity_mismatch, "image arity does not match the presentation");
        if (img.involves(img.v_slot()))
            fail(Errc::arity_mismatch, "images must not involve V");
        images_.push_back(pres_->normal_form(img));
    }
    unreduced_ = std::move(images);
}

const VerifyReport& ExpMap::verify() const {
    if (report_) return *report_;
    const std::size_t n = pres_->nvars();
    const FieldSpec& field = pres_->field();
    // The unreduced images and the stored reductions differ by relation
    // multiples, so every identity below has the same truth value on either;
    // the unreduced ones keep substitution exponents small.
    const std::vector<Poly>& work = unreduced_ ? *unreduced_ : images_;

    const auto run = [&]() -> VerifyReport {
        VerifyReport rep;

        // (W) the relation must map to zero.
        Poly gw = pres_->normal_form(pres_->relation().substitute(work));
        if (!gw.is_zero()) {
            rep.ok = false;
            rep.failed_axiom = Axiom::well_definedness;
            rep.residual = gw;
            rep.detail = "relation image reduces to " + gw.str();
            return rep;
        }

        // (E) evaluation at U = 0 must restore each generator. Compare reduced
        // forms: when the reduction degree is 1 the generator itself rewrites.
        for (std::size_t i = 0; i < n; ++i) {
            Poly e0 = pres_->normal_form(work[i].set_u_to_zero());
            Poly xi = pres_->normal_form(Poly::variable(field, n, i));
            if (e0 != xi) {
                rep.ok = false;
                rep.failed_axiom = Axiom::counit;
                rep.failed_generator = i;
                rep.residual = e0 - xi;
                rep.detail = "image of generator " + std::to_string(i + 1) +
                             " at U = 0 differs from the generator by " + rep.residual.str();
                return rep;
            }
        }

        // (C) applying the map twice must agree with shifting U by V.
        std::vector<Poly> images_v;
        images_v.reserve(n);
        for (std::size_t k = 0; k < n; ++k) images_v.push_back(work[k].rename_u_to_v());
        std::vector<Poly> shift_u = identity_images(pres_);
        shift_u.push_back(Poly::u(field, n) + Poly::v(field, n));
        for (std::size_t i = 0; i < n; ++i) {
            Poly lhs = pres_->normal_form(work[i].substitute(images_v));
            Poly rhs = pres_->normal_form(work[i].substitute(shift_u));
            if (lhs != rhs) {
                rep.ok = false;
                rep.failed_axiom = Axiom::comultiplication;
                rep.failed_generator = i;
                rep.residual = lhs - rhs;
                rep.detail = "composition on generator " + std::to_string(i + 1) +
                             " differs from the U+V shift by " + rep.residual.str();
                return rep;
            }
        }

        rep.ok = true;
        rep.residual = Poly::zero(field, n);
        rep.detail = "verified";
        return rep;
    };

    report_ = run();
    unreduced_.reset();
    return *report_;
}

ExpMap identity_map(PresPtr pres) {
    std::vector<Poly> images = identity_images(pres);
    return ExpMap(std::move(pres), std::move(images));
}

Poly apply_map(const ExpMap& map, const Poly& f) {
    const PresPtr& pres = map.presentation();
    if (!(f.field() == pres->field()))
        fail(Errc::field_mismatch, "element field does not match the presentation");
    if (f.nvars() != pres->nvars())
        fail(Errc::arity_mismatch, "element arity does not match the presentation");
    if (f.involves(f.u_slot()) || f.involves(f.v_slot()))
        fail(Errc::arity_mismatch, "maps apply to ring elements, not to U or V terms");
    return pres->normal_form(pres->normal_form(f).substitute(map.images()));
}

Poly taylor_coefficient(const ExpMap& map, const Poly& f, std::uint64_t i) {
    return apply_map(map, f).coefficient_of_u(i);
}

std::optional<std::uint64_t> phi_degree(const ExpMap& map, const Poly& f) {
    if (!map.verify().ok) fail(Errc::unverified_map, "phi-degree needs a verified map");
    Poly nf = map.presentation()->normal_form(f);
    if (nf.is_zero()) return std::nullopt;
    Poly image = nf.substitute(map.images());
    return map.presentation()->normal_form(image).degree_in(nf.u_slot());
}

bool is_trivial(const ExpMap& map) {
    if (!map.verify().ok) fail(Errc::unverified_map, "triviality applies to verified maps");
    const PresPtr& pres = map.presentation();
    for (std::size_t i = 0; i < pres->nvars(); ++i) {
        Poly xi = pres->normal_form(Poly::variable(pres->field(), pres->nvars(), i));
        if (map.image(i) != xi) return false;
    }
    return true;
}

DegreeInequalityReport check_degree_inequality(const ExpMap& map, const Poly& f) {
    if (!map.verify().ok)
        fail(Errc::unverified_map, "degree inequality applies to verified maps");
    const PresPtr& pres = map.presentation();
    if (pres->is_domain() != std::optional<bool>(true))
        fail(Errc::not_a_domain, "degree inequality needs a domain");
    Poly nf = pres->normal_form(f);
    if (nf.is_zero()) fail(Errc::zero_element, "degree inequality applies to nonzero elements");

    DegreeInequalityReport rep;
    std::uint64_t d = *phi_degree(map, nf);
    rep.degree = d;
    std::ostringstream detail;
    detail << "deg_phi(f) = " << d;
    for (std::uint64_t i = 1; i <= d; ++i) {
        Poly ci = taylor_coefficient(map, nf, i);
        if (ci.is_zero()) continue;
        std::uint64_t di = *phi_degree(map, ci);
        if (di > d - i) {
            rep.holds = false;
            detail << "; deg_phi(phi^(" << i << ")(f)) = " << di << " exceeds " << (d - i);
            rep.detail = detail.str();
            return rep;
        }
        detail << "; deg_phi(phi^(" << i << ")(f)) = " << di << " <= " << (d - i);
    }
    if (d > 0) {
        Poly top = taylor_coefficient(map, nf, d);
        if (*phi_degree(map, top) != 0) {
            rep.holds = false;
            detail << "; top coefficient is not invariant";
            rep.detail = detail.str();
            return rep;
        }
        detail << "; top coefficient is invariant";
    }
    rep.holds = true;
    rep.detail = detail.str();
    return rep;
}

ExtendedReport verify_extended(const ExpMap& map, const std::vector<Poly>& sample,
                               std::uint64_t max_order) {
    if (!map.verify().ok)
        fail(Errc::unverified_map, "extended checks apply to verified maps");
    const PresPtr& pres = map.presentation();
    const FieldSpec& field = pres->field();
    ExtendedReport rep;

    auto violation = [&](const std::string& what) {
        if (rep.ok) {
            rep.ok = false;
            rep.first_violation = what;
        }
    };

    std::vector<Poly> reduced;
    std::vector<std::vector<Poly>> coeffs;
    for (const Poly& raw : sample) {
        Poly a = pres->normal_form(raw);
        reduced.push_back(a);
        coeffs.push_back(apply_map(map, a).u_coefficients());
    }

    for (std::size_t s = 0; s < reduced.size(); ++s) {
        const Poly& a = reduced[s];
        // Order zero reproduces the element.
        if (coeffs[s].empty() ? !a.is_zero() : coeffs[s][0] != a)
            violation("phi^(0) does not fix sample element " + std::to_string(s));
        ++rep.identities_checked;

        // Top coefficient is invariant.
        if (!a.is_zero()) {
            std::uint64_t d = *phi_degree(map, a);
            if (d > 0) {
                Poly top = taylor_coefficient(map, a, d);
                if (*phi_degree(map, top) != 0)
                    violation("top coefficient of sample element " + std::to_string(s) +
                              " is not invariant");
                ++rep.identities_checked;
            }
        }

        // Composition rule: phi^(i) after phi^(j) scales phi^(i+j) binomially.
        for (std::uint64_t j = 0; j <= max_order; ++j) {
            for (std::uint64_t i = 0; i + j <= max_order; ++i) {
                Poly inner = taylor_coefficient(map, a, j);
                Poly lhs = taylor_coefficient(map, inner, i);
                Poly rhs = taylor_coefficient(map, a, i + j)
                               .scale(binomial_in_field(field, i + j, i));
                if (lhs != rhs)
                    violation("composition rule fails at orders (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") on sample element " + std::to_string(s));
                ++rep.identities_checked;
            }
        }
    }

    for (std::size_t s = 0; s < reduced.size(); ++s) {
        for (std::size_t t = s; t < reduced.size(); ++t) {
            // Additivity, order by order.
            std::vector<Poly> sum = apply_map(map, reduced[s] + reduced[t]).u_coefficients();
            std::size_t orders = std::max(std::max(coeffs[s].size(), coeffs[t].size()), sum.size());
            for (std::size_t k = 0; k < orders; ++k) {
                Poly lhs = k < sum.size() ? sum[k] : Poly::zero(field, pres->nvars());
                Poly a_k = k < coeffs[s].size() ? coeffs[s][k] : Poly::zero(field, pres->nvars());
                Poly b_k = k < coeffs[t].size() ? coeffs[t][k] : Poly::zero(field, pres->nvars());
                if (lhs != pres->normal_form(a_k + b_k))
                    violation("additivity fails at order " + std::to_string(k) +
                              " on sample elements " + std::to_string(s) + ", " +
                              std::to_string(t));
                ++rep.identities_checked;
            }

            // Leibniz expansion, order by order.
            std::vector<Poly> prod = apply_map(map, reduced[s] * reduced[t]).u_coefficients();
            std::size_t prod_orders =
                std::max(prod.size(), coeffs[s].size() + coeffs[t].size());
            for (std::size_t k = 0; k < prod_orders; ++k) {
                Poly conv = Poly::zero(field, pres->nvars());
                for (std::size_t i = 0; i <= k; ++i) {
                    std::size_t j = k - i;
                    if (i >= coeffs[s].size() || j >= coeffs[t].size()) continue;
                    conv = conv + coeffs[s][i] * coeffs[t][j];
                }
                conv = pres->normal_form(conv);
                Poly lhs = k < prod.size() ? prod[k] : Poly::zero(field, pres->nvars());
                if (lhs != conv)
                    violation("Leibniz expansion fails at order " + std::to_string(k) +
                              " on sample elements " + std::to_string(s) + ", " +
                              std::to_string(t));
                ++rep.identities_checked;
            }
        }
    }

    return rep;
}

ExpMap construct_from_unit_exponent(PresPtr pres, std::size_t i, std::size_t j) {
    require_pham_brieskorn(pres);
    require_index(pres, i);
    require_index(pres, j);
    require_distinct(i, j);
    if (pres->tuple()[i] != 1)
        fail(Errc::no_unit_exponent, "construction needs exponent 1 at the absorbing generator");

    const FieldSpec& field = pres->field();
    std::size_t n = pres->nvars();
    std::uint64_t aj = pres->tuple()[j];
    Poly xi = Poly::variable(field, n, i);
    Poly xj = Poly::variable(field, n, j);
    Poly shifted = (xj + Poly::u(field, n)).pow(aj) - xj.pow(aj);

    std::vector<Poly> images = identity_images(pres);
    images[i] = xi - shifted;
    images[j] = xj + Poly::u(field, n);
    return finish_construction(std::move(pres), std::move(images), "unit exponent");
}

ExpMap construct_from_p_power_pair(PresPtr pres, std::size_t i, std::size_t j) {
    require_pham_brieskorn(pres);
    require_index(pres, i);
    require_index(pres, j);
    require_distinct(i, j);
    if (pres->power() != 1)
        fail(Errc::case_condition_violated, "construction needs relation power 1");
    std::uint64_t p = pres->field().characteristic;
    if (p == 0)
        fail(Errc::decomposition_failure, "construction needs positive characteristic");

    auto [r, si] = split_p_part(p, pres->tuple()[i]);
    if (si != 1 || r == 0)
        fail(Errc::decomposition_failure,
             "absorbing exponent must be a positive power of the characteristic");
    auto [e, s] = split_p_part(p, pres->tuple()[j]);
    if (e < r)
        fail(Errc::decomposition_failure,
             "moved exponent needs at least the p-adic valuation of the absorbing one");

    std::uint64_t k = checked_mul_exp(s, pow_u64(p, e - r));
    const FieldSpec& field = pres->field();
    std::size_t n = pres->nvars();
    Poly xi = Poly::variable(field, n, i);
    Poly xj = Poly::variable(field, n, j);
    Poly shifted = (xj + Poly::u(field, n)).pow(k) - xj.pow(k);

    std::vector<Poly> images = identity_images(pres);
    images[i] = xi - shifted;
    images[j] = xj + Poly::u(field, n);
    return finish_construction(std::move(pres), std::move(images), "p-power pair");
}

ExpMap construct_from_two_squares(PresPtr pres, std::size_t i, std::size_t j) {
    require_pham_brieskorn(pres);
    require_index(pres, i);
    require_index(pres, j);
    require_distinct(i, j);
    if (pres->power() != 1)
        fail(Errc::case_condition_violated, "construction needs relation power 1");
    if (pres->nvars() < 3)
        fail(Errc::decomposition_failure, "construction needs at least three generators");
    if (pres->tuple()[i] != 2 || pres->tuple()[j] != 2)
        fail(Errc::decomposition_failure, "construction needs two exponents equal to 2");
    const FieldSpec& field = pres->field();
    if (field.characteristic == 2)
        fail(Errc::char_two, "characteristic 2 factors squares differently; use the p-power pair");
    std::optional<std::uint64_t> w = concrete_sqrt_minus_one(field);
    if (!w)
        fail(Errc::no_sqrt_minus_one, "construction needs a concrete square root of -1");

    std::size_t n = pres->nvars();
    Coeff iota = Coeff::from_int(field, static_cast<long long>(*w));
    Poly xi = Poly::variable(field, n, i);
    Poly xj = Poly::variable(field, n, j);
    Poly u_poly = xi + iota * xj;
    Poly v_poly = xi - iota * xj;

    // Shift every other generator along u; the total shift is divisible by u.
    Poly s = Poly::zero(field, n);
    for (std::size_t l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        Poly xl = Poly::variable(field, n, l);
        s = s + (xl + u_poly * Poly::u(field, n)).pow(pres->tuple()[l]) - xl.pow(pres->tuple()[l]);
    }
    std::optional<Poly> quotient = s.divide_exact(u_poly);
    if (!quotient) throw std::logic_error("two squares: shift sum is not divisible by u");

    Poly u_im = u_poly;
    Poly v_im = v_poly - *quotient;
    Coeff half = Coeff::from_int(field, 2).inverse();
    Coeff half_over_iota = (Coeff::from_int(field, 2) * iota).inverse();

    std::vector<Poly> images = identity_images(pres);
    for (std::size_t l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        images[l] = Poly::variable(field, n, l) + u_poly * Poly::u(field, n);
    }
    images[i] = (u_im + v_im).scale(half);
    images[j] = (u_im - v_im).scale(half_over_iota);
    return finish_construction(std::move(pres), std::move(images), "two squares");
}

ExpMap construct_on_power_relation(PresPtr pres, PowerRelationCase which) {
    require_pham_brieskorn(pres);
    if (pres->power() < 2)
        fail(Errc::case_condition_violated, "construction needs a proper relation power");
    const FieldSpec& field = pres->field();
    std::uint64_t p = field.characteristic;
    std::uint64_t m = pres->power();
    std::size_t n = pres->nvars();

    auto divides_some_entry = [&]() {
        if (p == 0) return false;
        for (std::uint64_t a : pres->tuple())
            if (a % p == 0) return true;
        return false;
    };

    std::size_t target = n;  // index carrying the U term for the valuation cases
    if (which == PowerRelationCase::auto_select) {
        if (!divides_some_entry()) {
            which = PowerRelationCase::unit_exponents;
        } else {
            std::uint64_t best = 0;
            for (std::size_t l = 0; l < n; ++l) {
                std::uint64_t e = split_p_part(p, pres->tuple()[l]).first;
                if (e > best) {
                    best = e;
                    target = l;
                }
            }
            which = pow_u64(p, best) >= m ? PowerRelationCase::high_valuation
                                          : PowerRelationCase::low_valuation;
        }
    } else if (which == PowerRelationCase::high_valuation ||
               which == PowerRelationCase::low_valuation) {
        for (std::size_t l = 0; l < n && target == n; ++l) {
            std::uint64_t e = split_p_part(p, pres->tuple()[l]).first;
            if (e == 0) continue;
            bool high = pow_u64(p, e) >= m;
            if (high == (which == PowerRelationCase::high_valuation)) target = l;
        }
        if (target == n)
            fail(Errc::case_condition_violated,
                 "no tuple entry has the p-adic valuation this case needs");
    }

    Poly g = relation_base(pres);
    std::vector<Poly> images = identity_images(pres);
    switch (which) {
        case PowerRelationCase::unit_exponents: {
            if (divides_some_entry())
                fail(Errc::no_unit_exponent,
                     "the characteristic divides a tuple entry, so no entry inverts");
            Poly gm1 = g.pow(m - 1);
            for (std::size_t l = 0; l < n; ++l) {
                Coeff inv_a =
                    Coeff::from_int(field, static_cast<long long>(pres->tuple()[l])).inverse();
                images[l] = images[l] + (images[l] * gm1 * Poly::u(field, n)).scale(inv_a);
            }
            break;
        }
        case PowerRelationCase::high_valuation:
            images[target] = images[target] + g * Poly::u(field, n);
            break;
        case PowerRelationCase::low_valuation: {
            std::uint64_t e = split_p_part(p, pres->tuple()[target]).first;
            std::uint64_t alpha = m / pow_u64(p, e);
            images[target] = images[target] + g.pow(alpha + 1) * Poly::u(field, n);
            break;
        }
        case PowerRelationCase::auto_select:
            break;  // resolved above
    }
    return finish_construction(std::move(pres), std::move(images), "power relation");
}

RestrictionResult restrict_to_frobenius_subring(const ExpMap& map) {
    const PresPtr& pres = map.presentation();
    require_pham_brieskorn(pres);
    if (pres->power() != 1)
        fail(Errc::case_condition_violated, "restriction needs relation power 1");
    std::uint64_t p = pres->field().characteristic;
    if (p == 0)
        fail(Errc::decomposition_failure, "restriction needs positive characteristic");
    if (!map.verify().ok) fail(Errc::unverified_map, "restriction applies to verified maps");

    std::size_t n = pres->nvars();
    std::size_t pivot = n;
    std::uint64_t r = 0;
    for (std::size_t l = 0; l < n; ++l) {
        std::uint64_t e = split_p_part(p, pres->tuple()[l]).first;
        if (e == 0) {
            if (pivot != n)
                fail(Errc::decomposition_failure,
                     "restriction needs exactly one exponent prime to the characteristic");
            pivot = l;
        } else {
            r = (r == 0) ? e : std::min(r, e);
        }
    }
    if (pivot == n)
        fail(Errc::decomposition_failure,
             "restriction needs exactly one exponent prime to the characteristic");

    std::uint64_t q = pow_u64(p, r);
    std::vector<std::uint64_t> reduced(n);
    for (std::size_t l = 0; l < n; ++l)
        reduced[l] = (l == pivot) ? pres->tuple()[l] : pres->tuple()[l] / q;
    PresPtr sub = RingPresentation::pham_brieskorn(pres->field(), reduced);

    // Translate a subring element: every non-pivot exponent divides by q.
    auto translate = [&](const Poly& f, std::size_t generator_index) {
        Poly out = Poly::zero(pres->field(), n);
        for (const auto& [exps, c] : f.terms()) {
            Exponents scaled = exps;
            for (std::size_t l = 0; l < n; ++l) {
                if (l == pivot) continue;
                if (scaled[l] % q != 0)
                    fail(Errc::image_not_in_subring,
                         "image of generator " + std::to_string(generator_index + 1) +
                             " lies outside k[X" + std::to_string(pivot + 1) +
                             ", X^" + std::to_string(q) + "]: " + f.str());
                scaled[l] /= q;
            }
            out.add_term(scaled, c);
        }
        return out;
    };

    std::vector<Poly> images(n, Poly::zero(pres->field(), n));
    for (std::size_t l = 0; l < n; ++l) {
        Poly in_b = (l == pivot) ? map.image(l) : pres->normal_form(map.image(l).pow(q));
        images[l] = translate(in_b, l);
    }

    RestrictionResult result{ExpMap(sub, std::move(images)), false, q, pivot, reduced};
    const VerifyReport& rep = result.map.verify();
    if (!rep.ok)
        throw std::logic_error("restricted map failed verification: " + rep.detail);
    result.trivial = is_trivial(result.map);
    return result;
}

}  // namespace pbrigid
