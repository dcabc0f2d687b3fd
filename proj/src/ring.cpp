#include "pbrigid/ring.hpp"

#include <numeric>

namespace pbrigid {

PrimalityCheck relation_shape_primality(const FieldSpec& field, std::size_t nvars,
                                        std::uint64_t r, const Poly& h) {
    if (h.is_zero()) return PrimalityCheck::not_prime;  // X^r alone, r >= 1: X divides
    std::uint64_t p = field.characteristic;
    // Pham-Brieskorn shape: each term a power of a distinct single variable.
    bool pb_shape = true;
    std::vector<bool> seen(nvars, false);
    std::vector<std::uint64_t> exponents{r};
    for (const auto& [e, c] : h.terms()) {
        std::size_t var = 0, count = 0;
        for (std::size_t i = 1; i < nvars; ++i) {
            if (e[i] > 0) {
                var = i;
                ++count;
            }
        }
        if (count != 1 || e[0] > 0 || seen[var]) {
            pb_shape = false;
            break;
        }
        seen[var] = true;
        exponents.push_back(e[var]);
    }
    if (pb_shape && exponents.size() >= 3) {
        std::uint64_t g = 0;
        for (std::uint64_t e : exponents) g = std::gcd(g, e);
        if (p == 0 || g % p != 0) return PrimalityCheck::prime;
        return PrimalityCheck::not_prime;
    }
    if (h.term_count() == 1) {
        const auto& [e, c] = *h.terms().begin();
        std::vector<std::uint64_t> exps;
        for (std::size_t i = 1; i < nvars; ++i) {
            if (e[i] > 0) exps.push_back(e[i]);
        }
        if (e[0] == 0 && exps.size() == 2) {
            std::uint64_t g = std::gcd(r, std::gcd(exps[0], exps[1]));
            return g == 1 ? PrimalityCheck::prime : PrimalityCheck::not_prime;
        }
    }
    return PrimalityCheck::unchecked;
}

RingPresentation::RingPresentation(const FieldSpec& field, std::size_t nvars, RingKind kind,
                                   Poly relation, std::uint64_t reduction_degree,
                                   std::vector<std::uint64_t> tuple, std::uint64_t power,
                                   std::optional<bool> is_domain)
    : field_(field),
      nvars_(nvars),
      kind_(kind),
      relation_(std::move(relation)),
      reduction_degree_(reduction_degree),
      tuple_(std::move(tuple)),
      power_(power),
      is_domain_(is_domain),
      tail_(field, nvars),
      rewrite_(field, nvars) {
    Exponents lead(nvars_ + 2, 0);
    lead[0] = reduction_degree_;
    Poly lead_mono = Poly::monomial(field_, nvars_, lead, Coeff::from_int(field_, 1));
    tail_ = relation_ - lead_mono;
    if (tail_.degree_in(0) >= reduction_degree_)
        fail(Errc::invalid_relation, "relation not monic in the reduction variable");
    rewrite_ = -tail_;
}

std::shared_ptr<const RingPresentation> RingPresentation::pham_brieskorn(
    const FieldSpec& field, const std::vector<std::uint64_t>& tuple, std::uint64_t power) {
    if (tuple.size() < 2) fail(Errc::invalid_tuple, "need at least two exponents");
    for (std::uint64_t a : tuple) {
        if (a == 0) fail(Errc::invalid_tuple, "exponents must be positive");
    }
    if (power == 0) fail(Errc::invalid_tuple, "relation power must be positive");
    std::size_t n = tuple.size();
    Poly base(field, n);
    for (std::size_t i = 0; i < n; ++i) {
        base = base + Poly::variable(field, n, i).pow(tuple[i]);
    }
    Poly relation = base.pow(power);
    std::uint64_t g = 0;
    for (std::uint64_t a : tuple) g = std::gcd(g, a);
    bool domain = power == 1 && (field.characteristic == 0 || g % field.characteristic != 0);
    std::uint64_t rdeg = checked_mul_exp(tuple[0], power);
    return std::shared_ptr<const RingPresentation>(
        new RingPresentation(field, n, RingKind::pham_brieskorn, std::move(relation), rdeg, tuple,
                             power, domain));
}

std::shared_ptr<const RingPresentation> RingPresentation::xr_plus_h(const FieldSpec& field,
                                                                    std::size_t nvars,
                                                                    std::uint64_t r,
                                                                    const Poly& h) {
    if (nvars < 2) fail(Errc::invalid_tuple, "need at least two variables");
    if (r == 0) fail(Errc::invalid_relation, "reduction degree must be positive");
    if (h.nvars() != nvars) fail(Errc::arity_mismatch, "h arity differs from ring arity");
    if (h.field().characteristic != field.characteristic)
        fail(Errc::field_mismatch, "h over a different characteristic");
    if (h.involves(0)) fail(Errc::invalid_relation, "h must not involve the reduction variable");
    if (h.involves(nvars) || h.involves(nvars + 1))
        fail(Errc::invalid_relation, "h must not involve U or V");
    Exponents lead(nvars + 2, 0);
    lead[0] = r;
    Poly relation = Poly::monomial(field, nvars, lead, Coeff::from_int(field, 1)) + h;
    std::optional<bool> domain;
    switch (relation_shape_primality(field, nvars, r, h)) {
        case PrimalityCheck::prime: domain = true; break;
        case PrimalityCheck::not_prime: domain = false; break;
        case PrimalityCheck::unchecked: domain = std::nullopt; break;
    }
    return std::shared_ptr<const RingPresentation>(
        new RingPresentation(field, nvars, RingKind::xr_plus_h, std::move(relation), r, {}, 1,
                             domain));
}

Poly RingPresentation::normal_form(const Poly& f) const {
    if (f.nvars() != nvars_) fail(Errc::arity_mismatch, "element arity differs from ring arity");
    if (f.field().characteristic != field_.characteristic)
        fail(Errc::field_mismatch, "element over a different characteristic");
    Poly cur = f;
    for (;;) {
        Poly low(field_, nvars_);
        Poly carried(field_, nvars_);
        bool reduced_any = false;
        for (const auto& [e, c] : cur.terms()) {
            if (e[0] < reduction_degree_) {
                low.add_term(e, c);
                continue;
            }
            reduced_any = true;
            Exponents rest = e;
            rest[0] = e[0] - reduction_degree_;
            carried = carried + Poly::monomial(field_, nvars_, rest, c) * rewrite_;
        }
        if (!reduced_any) return cur;
        cur = low + carried;
    }
}

bool RingPresentation::same_presentation(const RingPresentation& rhs) const {
    return field_ == rhs.field_ && nvars_ == rhs.nvars_ && kind_ == rhs.kind_ &&
           reduction_degree_ == rhs.reduction_degree_ && tuple_ == rhs.tuple_ &&
           power_ == rhs.power_ && relation_ == rhs.relation_;
}

RingElement::RingElement(PresPtr pres, const Poly& raw) : pres_(std::move(pres)), nf_() {
    nf_ = pres_->normal_form(raw);
}

void RingElement::check_same(const RingElement& rhs) const {
    if (!pres_->same_presentation(*rhs.pres_))
        fail(Errc::presentation_mismatch, "elements of different presentations");
}

RingElement RingElement::operator+(const RingElement& rhs) const {
    check_same(rhs);
    return RingElement(pres_, nf_ + rhs.nf_);
}

RingElement RingElement::operator-(const RingElement& rhs) const {
    check_same(rhs);
    return RingElement(pres_, nf_ - rhs.nf_);
}

RingElement RingElement::operator*(const RingElement& rhs) const {
    check_same(rhs);
    return RingElement(pres_, nf_ * rhs.nf_);
}

bool RingElement::operator==(const RingElement& rhs) const {
    check_same(rhs);
    return nf_ == rhs.nf_;
}

RingElement make_element(PresPtr pres, const Poly& raw) { return RingElement(std::move(pres), raw); }

RingElement generator(PresPtr pres, std::size_t index) {
    Poly x = Poly::variable(pres->field(), pres->nvars(), index);
    return RingElement(std::move(pres), x);
}

}  // namespace pbrigid
