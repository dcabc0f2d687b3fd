#include "pbrigid/grading.hpp"

#include <stdexcept>

namespace pbrigid {

namespace {

long long to_weight(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p()) fail(Errc::exponent_overflow, std::string(what) + " overflows");
    return z.get_si();
}

}  // namespace

WeightVector standard_grading(const PresPtr& pres) {
    if (pres->kind() != RingKind::pham_brieskorn)
        fail(Errc::presentation_mismatch, "standard weights need a Pham-Brieskorn tuple");
    mpz_class lcm = 1;
    for (std::uint64_t a : pres->tuple()) {
        mpz_class az(static_cast<unsigned long>(a));
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), az.get_mpz_t());
    }
    WeightVector w;
    w.weights.reserve(pres->nvars());
    for (std::uint64_t a : pres->tuple()) {
        mpz_class wi = lcm / mpz_class(static_cast<unsigned long>(a));
        w.weights.push_back(to_weight(wi, "standard weight"));
    }
    return w;
}

WeightVector homogenizing_weights(const PresPtr& pres, const std::vector<long long>& base) {
    if (base.size() + 1 != pres->nvars())
        fail(Errc::arity_mismatch, "expected one base weight per tail variable");
    const Poly& h = pres->tail();
    if (h.is_zero()) fail(Errc::zero_polynomial, "the relation has no tail to weigh");
    if (h.involves(pres->reduction_slot()))
        fail(Errc::invalid_relation, "the tail must be free of the reduction variable");

    WeightVector lifted;
    lifted.weights.assign(1, 0);
    lifted.weights.insert(lifted.weights.end(), base.begin(), base.end());
    mpq_class deg = *h.weighted_degree(lifted);
    if (deg <= 0) fail(Errc::invalid_relation, "the tail must have positive base degree");

    mpz_class dz = deg.get_num();  // integral: integer weights, integer exponents
    mpz_class rz(static_cast<unsigned long>(pres->reduction_degree()));
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), dz.get_mpz_t(), rz.get_mpz_t());
    mpz_class scale = rz / g;

    WeightVector w;
    w.weights.reserve(pres->nvars());
    w.weights.push_back(to_weight(dz / g, "reduction variable weight"));
    for (long long b : base)
        w.weights.push_back(to_weight(mpz_class(static_cast<long>(b)) * scale, "rescaled weight"));
    return w;
}

GradedPresentation associated_graded(const PresPtr& pres, const WeightVector& w,
                                     bool require_prime) {
    if (w.weights.size() != pres->nvars())
        fail(Errc::arity_mismatch, "expected one weight per generator");
    Poly top = pres->relation().top_component(w);

    Exponents lead(pres->nvars() + 2, 0);
    lead[pres->reduction_slot()] = pres->reduction_degree();
    Poly lead_term = Poly::monomial(pres->field(), pres->nvars(), lead,
                                    Coeff::from_int(pres->field(), 1));
    Poly h_top = top - lead_term;
    if (top.terms().find(lead) == top.terms().end() ||
        h_top.involves(pres->reduction_slot()))
        fail(Errc::invalid_relation,
             "the top component does not split off the reduction power: " + top.str());

    GradedPresentation graded;
    graded.pres = RingPresentation::xr_plus_h(pres->field(), pres->nvars(),
                                              pres->reduction_degree(), h_top);
    graded.primality = relation_shape_primality(pres->field(), pres->nvars(),
                                                pres->reduction_degree(), h_top);
    if (require_prime && graded.primality != PrimalityCheck::prime) {
        const char* why = graded.primality == PrimalityCheck::not_prime
                              ? "the graded relation is not prime: "
                              : "the graded relation has no primality certificate: ";
        fail(Errc::non_prime_graded_relation, why + graded.pres->relation().str());
    }
    return graded;
}

RingElement principal_symbol(const GradedPresentation& graded, const RingElement& f,
                             const WeightVector& w) {
    const PresPtr& target = graded.pres;
    if (!(f.presentation()->field() == target->field()) ||
        f.presentation()->nvars() != target->nvars())
        fail(Errc::presentation_mismatch, "element and graded ring live over different ambients");
    return make_element(target, f.nf().top_component(w));
}

HomogenizationReport homogenize_map(const ExpMap& map, const WeightVector& w) {
    const PresPtr& pres = map.presentation();
    if (!map.verify().ok)
        fail(Errc::unverified_map, "homogenization applies to verified maps");
    if (w.weights.size() != pres->nvars())
        fail(Errc::arity_mismatch, "expected one weight per generator");
    if (is_trivial(map))
        fail(Errc::trivial_map, "the trivial map has no weight drift to select");

    const FieldSpec& field = pres->field();
    std::size_t n = pres->nvars();

    std::vector<std::vector<Poly>> coeffs;
    coeffs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) coeffs.push_back(map.image(i).u_coefficients());

    HomogenizationReport rep;
    bool have_slope = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 1; j < coeffs[i].size(); ++j) {
            if (coeffs[i][j].is_zero()) continue;
            mpq_class drift = (*coeffs[i][j].weighted_degree(w) -
                              mpq_class(static_cast<long>(w.weights[i]))) /
                             mpq_class(static_cast<unsigned long>(j));
            if (!have_slope || drift > rep.slope) {
                rep.slope = drift;
                rep.attaining.clear();
                have_slope = true;
            }
            if (drift == rep.slope) rep.attaining.emplace_back(i, j);
        }
    }

    std::vector<Poly> candidate;
    candidate.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly img = Poly::zero(field, n);
        for (std::uint64_t j = 0; j < coeffs[i].size(); ++j) {
            if (coeffs[i][j].is_zero()) continue;
            mpq_class target = mpq_class(static_cast<long>(w.weights[i])) +
                               mpq_class(static_cast<unsigned long>(j)) * rep.slope;
            Poly kept = coeffs[i][j].homogeneous_component(w, target);
            if (!kept.is_zero()) img = img + kept * Poly::u(field, n).pow(j);
        }
        candidate.push_back(img);
    }

    ExpMap result(pres, std::move(candidate));
    if (result.images() == map.images()) {
        rep.outcome = HomogenizeOutcome::already_homogeneous;
        rep.result = std::move(result);
        return rep;
    }
    const VerifyReport& check = result.verify();
    if (check.ok) {
        rep.outcome = HomogenizeOutcome::homogenized;
        rep.result = std::move(result);
    } else {
        rep.outcome = HomogenizeOutcome::candidate_verification_failed;
        rep.failure = check;
    }
    return rep;
}

std::pair<WeightVector, WeightVector> monomial_surface_gradings(std::uint64_t a, std::uint64_t b,
                                                                std::uint64_t c) {
    if (a < 1 || b < 1 || c < 1)
        fail(Errc::invalid_tuple, "surface exponents must be positive");
    auto ll = [](std::uint64_t v) {
        mpz_class z(static_cast<unsigned long>(v));
        return to_weight(z, "surface weight");
    };
    WeightVector first{{ll(c), 0, ll(a)}, std::nullopt};
    WeightVector second{{ll(b), ll(a), 0}, std::nullopt};
    return {first, second};
}

}  // namespace pbrigid
