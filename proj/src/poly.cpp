#include "pbrigid/poly.hpp"

#include <algorithm>
#include <sstream>

namespace pbrigid {

namespace {

Coeff coeff_from_u64(const FieldSpec& field, std::uint64_t v) {
    if (field.characteristic > 0)
        return Coeff::from_int(field, static_cast<long long>(v % field.characteristic));
    return Coeff::from_mpq(field, mpq_class(mpz_class(static_cast<unsigned long>(v))));
}

}  // namespace

std::uint64_t checked_add_exp(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s < a) fail(Errc::exponent_overflow, "exponent sum overflows");
    return s;
}

std::uint64_t checked_mul_exp(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) fail(Errc::exponent_overflow, "exponent product overflows");
    return a * b;
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    std::uint64_t da = 0, db = 0;
    for (std::uint64_t e : a) da += e;
    for (std::uint64_t e : b) db += e;
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

Poly::Poly(const FieldSpec& field, std::size_t nvars) : field_(field), nvars_(nvars) {}

Poly Poly::zero(const FieldSpec& field, std::size_t nvars) { return Poly(field, nvars); }

Poly Poly::constant(const FieldSpec& field, std::size_t nvars, const Coeff& c) {
    Poly p(field, nvars);
    p.add_term(Exponents(nvars + 2, 0), c);
    return p;
}

Poly Poly::constant_int(const FieldSpec& field, std::size_t nvars, long long c) {
    return constant(field, nvars, Coeff::from_int(field, c));
}

Poly Poly::variable(const FieldSpec& field, std::size_t nvars, std::size_t index) {
    if (index >= nvars) fail(Errc::arity_mismatch, "variable index out of range");
    Poly p(field, nvars);
    Exponents e(nvars + 2, 0);
    e[index] = 1;
    p.add_term(e, Coeff::from_int(field, 1));
    return p;
}

Poly Poly::u(const FieldSpec& field, std::size_t nvars) {
    Poly p(field, nvars);
    Exponents e(nvars + 2, 0);
    e[nvars] = 1;
    p.add_term(e, Coeff::from_int(field, 1));
    return p;
}

Poly Poly::v(const FieldSpec& field, std::size_t nvars) {
    Poly p(field, nvars);
    Exponents e(nvars + 2, 0);
    e[nvars + 1] = 1;
    p.add_term(e, Coeff::from_int(field, 1));
    return p;
}

Poly Poly::monomial(const FieldSpec& field, std::size_t nvars, const Exponents& exps,
                    const Coeff& c) {
    if (exps.size() != nvars + 2) fail(Errc::arity_mismatch, "monomial exponent arity");
    Poly p(field, nvars);
    p.add_term(exps, c);
    return p;
}

void Poly::add_term(const Exponents& exps, const Coeff& c) {
    if (exps.size() != nvars_ + 2) fail(Errc::arity_mismatch, "term exponent arity");
    if (c.characteristic() != field_.characteristic)
        fail(Errc::field_mismatch, "coefficient characteristic differs from polynomial field");
    if (c.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Poly::check_compatible(const Poly& rhs) const {
    if (field_.characteristic != rhs.field_.characteristic)
        fail(Errc::field_mismatch, "polynomials over different characteristics");
    if (nvars_ != rhs.nvars_) fail(Errc::arity_mismatch, "polynomials of different arity");
}

Poly Poly::operator+(const Poly& rhs) const {
    check_compatible(rhs);
    Poly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
}

Poly Poly::operator-(const Poly& rhs) const {
    check_compatible(rhs);
    Poly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
    return out;
}

Poly Poly::operator-() const {
    Poly out(field_, nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Poly Poly::operator*(const Poly& rhs) const {
    check_compatible(rhs);
    Poly out(field_, nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            Exponents e(nvars_ + 2);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add_exp(ea[i], eb[i]);
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

bool Poly::operator==(const Poly& rhs) const {
    if (field_.characteristic != rhs.field_.characteristic || nvars_ != rhs.nvars_) return false;
    if (terms_.size() != rhs.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = rhs.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first || !(it->second == jt->second)) return false;
    }
    return true;
}

Poly Poly::scale(const Coeff& c) const {
    Poly out(field_, nvars_);
    if (c.is_zero()) return out;
    for (const auto& [e, t] : terms_) out.terms_.emplace(e, t * c);
    return out;
}

Poly operator*(const Coeff& c, const Poly& p) { return p.scale(c); }

Poly Poly::pow(std::uint64_t k) const {
    Poly one = Poly::constant_int(field_, nvars_, 1);
    if (k == 0) return one;
    std::uint64_t p = field_.characteristic;
    auto small_pow = [&](const Poly& base, std::uint64_t d) {
        Poly acc = one;
        Poly sq = base;
        while (d > 0) {
            if (d & 1) acc = acc * sq;
            d >>= 1;
            if (d) sq = sq * sq;
        }
        return acc;
    };
    if (p == 0) return small_pow(*this, k);
    // Base-p split: the p-power steps are Frobenius, which keeps every
    // intermediate as sparse as the input.
    Poly acc = one;
    Poly cur = *this;
    while (k > 0) {
        std::uint64_t d = k % p;
        if (d) acc = acc * small_pow(cur, d);
        k /= p;
        if (k > 0) {
            Poly frob(field_, nvars_);
            for (const auto& [e, c] : cur.terms_) {
                Exponents fe(nvars_ + 2);
                for (std::size_t i = 0; i < fe.size(); ++i) fe[i] = checked_mul_exp(e[i], p);
                frob.add_term(fe, c);  // c^p == c in F_p
            }
            cur = frob;
        }
    }
    return acc;
}

std::optional<std::uint64_t> Poly::total_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::uint64_t best = 0;
    for (const auto& [e, c] : terms_) {
        std::uint64_t d = 0;
        for (std::uint64_t x : e) d = checked_add_exp(d, x);
        best = std::max(best, d);
    }
    return best;
}

std::optional<std::uint64_t> Poly::ring_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::uint64_t best = 0;
    for (const auto& [e, c] : terms_) {
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < nvars_; ++i) d = checked_add_exp(d, e[i]);
        best = std::max(best, d);
    }
    return best;
}

std::uint64_t Poly::degree_in(std::size_t slot) const {
    std::uint64_t best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e[slot]);
    return best;
}

bool Poly::involves(std::size_t slot) const {
    for (const auto& [e, c] : terms_) {
        if (e[slot] > 0) return true;
    }
    return false;
}

namespace {

mpq_class term_weighted_degree(const Exponents& e, std::size_t nvars, const WeightVector& w) {
    if (w.weights.size() != nvars) fail(Errc::arity_mismatch, "weight vector arity");
    if (e[nvars + 1] > 0) fail(Errc::arity_mismatch, "weighted degree undefined on V-terms");
    mpq_class d = 0;
    for (std::size_t i = 0; i < nvars; ++i) {
        d += mpq_class(mpz_class(static_cast<long>(w.weights[i])) * mpz_class(static_cast<unsigned long>(e[i])));
    }
    if (e[nvars] > 0) {
        if (!w.u_weight) fail(Errc::unassigned_u_weight, "term involves U but U has no weight");
        d += *w.u_weight * mpq_class(mpz_class(static_cast<unsigned long>(e[nvars])));
    }
    return d;
}

}  // namespace

std::optional<mpq_class> Poly::weighted_degree(const WeightVector& w) const {
    std::optional<mpq_class> best;
    for (const auto& [e, c] : terms_) {
        mpq_class d = term_weighted_degree(e, nvars_, w);
        if (!best || d > *best) best = d;
    }
    return best;
}

Poly Poly::top_component(const WeightVector& w) const {
    Poly out(field_, nvars_);
    auto deg = weighted_degree(w);
    if (!deg) return out;
    for (const auto& [e, c] : terms_) {
        if (term_weighted_degree(e, nvars_, w) == *deg) out.terms_.emplace(e, c);
    }
    return out;
}

Poly Poly::homogeneous_component(const WeightVector& w, const mpq_class& degree) const {
    Poly out(field_, nvars_);
    for (const auto& [e, c] : terms_) {
        if (term_weighted_degree(e, nvars_, w) == degree) out.terms_.emplace(e, c);
    }
    return out;
}

bool Poly::is_homogeneous(const WeightVector& w) const {
    std::optional<mpq_class> seen;
    for (const auto& [e, c] : terms_) {
        mpq_class d = term_weighted_degree(e, nvars_, w);
        if (!seen) {
            seen = d;
        } else if (d != *seen) {
            return false;
        }
    }
    return true;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    if (images.size() < nvars_ || images.size() > nvars_ + 2)
        fail(Errc::arity_mismatch, "substitute needs one image per ring variable");
    for (const Poly& im : images) {
        if (im.field_.characteristic != field_.characteristic)
            fail(Errc::field_mismatch, "image over different characteristic");
        if (im.nvars_ != nvars_) fail(Errc::arity_mismatch, "image arity differs");
    }
    // Lazily computed powers of each slot's image.
    std::vector<std::map<std::uint64_t, Poly>> powers(nvars_ + 2);
    auto slot_power = [&](std::size_t slot, std::uint64_t e) -> const Poly& {
        auto& cache = powers[slot];
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        Poly base(field_, nvars_);
        if (slot < images.size()) {
            base = images[slot];
        } else if (slot == nvars_) {
            base = Poly::u(field_, nvars_);
        } else {
            base = Poly::v(field_, nvars_);
        }
        return cache.emplace(e, base.pow(e)).first->second;
    };
    Poly out(field_, nvars_);
    for (const auto& [e, c] : terms_) {
        Poly prod = Poly::constant(field_, nvars_, c);
        for (std::size_t slot = 0; slot < e.size(); ++slot) {
            if (e[slot] == 0) continue;
            prod = prod * slot_power(slot, e[slot]);
        }
        out = out + prod;
    }
    return out;
}

std::vector<Poly> Poly::u_coefficients() const {
    std::uint64_t top = degree_in(u_slot());
    std::vector<Poly> out;
    out.reserve(top + 1);
    for (std::uint64_t k = 0; k <= top; ++k) out.push_back(Poly(field_, nvars_));
    for (const auto& [e, c] : terms_) {
        Exponents r = e;
        std::uint64_t k = r[u_slot()];
        r[u_slot()] = 0;
        out[k].add_term(r, c);
    }
    return out;
}

Poly Poly::coefficient_of_u(std::uint64_t k) const {
    Poly out(field_, nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[u_slot()] != k) continue;
        Exponents r = e;
        r[u_slot()] = 0;
        out.add_term(r, c);
    }
    return out;
}

Poly Poly::set_u_to_zero() const {
    Poly out(field_, nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[u_slot()] == 0) out.terms_.emplace(e, c);
    }
    return out;
}

Poly Poly::rename_u_to_v() const {
    Poly out(field_, nvars_);
    for (const auto& [e, c] : terms_) {
        Exponents r = e;
        r[v_slot()] = checked_add_exp(r[v_slot()], r[u_slot()]);
        r[u_slot()] = 0;
        out.add_term(r, c);
    }
    return out;
}

Poly Poly::derivative(std::size_t slot) const {
    if (slot >= nvars_ + 2) fail(Errc::arity_mismatch, "derivative slot out of range");
    Poly out(field_, nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[slot] == 0) continue;
        Exponents r = e;
        r[slot] -= 1;
        out.add_term(r, c * coeff_from_u64(field_, e[slot]));
    }
    return out;
}

std::optional<Poly> Poly::divide_exact(const Poly& rhs) const {
    check_compatible(rhs);
    if (rhs.is_zero()) fail(Errc::division_by_zero, "division by the zero polynomial");
    Poly rem = *this;
    Poly quot(field_, nvars_);
    const auto& [lead_e, lead_c] = *rhs.terms_.rbegin();
    Coeff lead_inv = lead_c.inverse();
    while (!rem.is_zero()) {
        const auto& [re, rc] = *rem.terms_.rbegin();
        Exponents qe(nvars_ + 2);
        bool divisible = true;
        for (std::size_t i = 0; i < qe.size(); ++i) {
            if (re[i] < lead_e[i]) {
                divisible = false;
                break;
            }
            qe[i] = re[i] - lead_e[i];
        }
        if (!divisible) return std::nullopt;
        Poly t = Poly::monomial(field_, nvars_, qe, rc * lead_inv);
        quot = quot + t;
        rem = rem - t * rhs;
    }
    return quot;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.str();
        const Exponents& e = it->first;
        for (std::size_t slot = 0; slot < e.size(); ++slot) {
            if (e[slot] == 0) continue;
            os << "*";
            if (slot < nvars_) {
                os << "X" << (slot + 1);
            } else if (slot == nvars_) {
                os << "U";
            } else {
                os << "V";
            }
            if (e[slot] > 1) os << "^" << e[slot];
        }
    }
    return os.str();
}

}  // namespace pbrigid
