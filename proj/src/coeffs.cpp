#include "pbrigid/coeffs.hpp"

#include <cctype>

namespace pbrigid {

namespace {

constexpr std::uint64_t kMaxCharacteristic = (1ULL << 31) - 1;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    // a, b < p < 2^31, so the product fits in 64 bits.
    return (a * b) % p;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) acc = mod_mul(acc, base, p);
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    return acc;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldSpec make_field(std::uint64_t characteristic, bool algebraically_closed,
                     std::optional<bool> sqrt_minus_one_declared) {
    if (characteristic != 0) {
        if (characteristic > kMaxCharacteristic)
            fail(Errc::invalid_characteristic,
                 "characteristic " + std::to_string(characteristic) + " exceeds 2^31-1");
        if (!is_prime_u64(characteristic))
            fail(Errc::invalid_characteristic,
                 std::to_string(characteristic) + " is neither 0 nor prime");
    }
    FieldSpec field;
    field.characteristic = characteristic;
    field.algebraically_closed = algebraically_closed;
    if (algebraically_closed) {
        if (sqrt_minus_one_declared && !*sqrt_minus_one_declared)
            fail(Errc::inconsistent_trait,
                 "algebraically closed fields contain sqrt(-1)");
        field.sqrt_minus_one = true;
    } else if (characteristic > 0) {
        bool computed = characteristic == 2 || characteristic % 4 == 1;
        if (sqrt_minus_one_declared && *sqrt_minus_one_declared != computed)
            fail(Errc::inconsistent_trait,
                 "sqrt(-1) in F_p is determined by p mod 4; declaration contradicts p = " +
                     std::to_string(characteristic));
        field.sqrt_minus_one = computed;
    } else {
        field.sqrt_minus_one = sqrt_minus_one_declared.value_or(false);
    }
    return field;
}

std::optional<std::uint64_t> concrete_sqrt_minus_one(const FieldSpec& field) {
    std::uint64_t p = field.characteristic;
    if (p == 2) return 1;
    if (p == 0 || p % 4 != 1) return std::nullopt;
    // w = n^((p-1)/4) for the first quadratic non-residue n.
    for (std::uint64_t n = 2; n < p; ++n) {
        if (mod_pow(n, (p - 1) / 2, p) == p - 1) {
            std::uint64_t w = mod_pow(n, (p - 1) / 4, p);
            return w;
        }
    }
    return std::nullopt;  // unreachable for prime p % 4 == 1
}

bool has_abstract_traits(const FieldSpec& field) {
    if (field.algebraically_closed) return true;
    if (field.sqrt_minus_one && !concrete_sqrt_minus_one(field)) return true;
    return false;
}

Coeff Coeff::from_int(const FieldSpec& field, long long value) {
    Coeff c(field);
    if (c.p_ > 0) {
        long long m = value % static_cast<long long>(c.p_);
        if (m < 0) m += static_cast<long long>(c.p_);
        c.res_ = static_cast<std::uint64_t>(m);
    } else {
        c.rat_ = mpq_class(static_cast<long>(value));
    }
    return c;
}

Coeff Coeff::from_mpq(const FieldSpec& field, const mpq_class& value) {
    Coeff c(field);
    if (c.p_ > 0) {
        // num/den mod p; den must be a unit.
        mpz_class p(static_cast<unsigned long>(c.p_));
        mpz_class num = value.get_num() % p;
        if (num < 0) num += p;
        mpz_class den = value.get_den() % p;
        if (den == 0) fail(Errc::division_by_zero, "denominator divisible by characteristic");
        std::uint64_t n = num.get_ui();
        std::uint64_t d = den.get_ui();
        c.res_ = mod_mul(n, mod_pow(d, c.p_ - 2, c.p_), c.p_);
    } else {
        c.rat_ = value;
        c.rat_.canonicalize();
    }
    return c;
}

Coeff Coeff::parse(const FieldSpec& field, const std::string& text) {
    if (text.empty()) fail(Errc::parse_error, "empty coefficient");
    std::size_t i = text[0] == '-' ? 1 : 0;
    if (i == text.size()) fail(Errc::parse_error, "bare sign in coefficient");
    bool seen_slash = false;
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] == '/' && !seen_slash && field.characteristic == 0 && j + 1 < text.size()) {
            seen_slash = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(text[j])))
            fail(Errc::parse_error, "bad coefficient literal '" + text + "'");
    }
    if (field.characteristic > 0) {
        mpz_class v(text, 10);
        mpz_class p(static_cast<unsigned long>(field.characteristic));
        mpz_class m = v % p;
        if (m < 0) m += p;
        Coeff c(field);
        c.res_ = m.get_ui();
        return c;
    }
    mpq_class q(text, 10);
    if (q.get_den() == 0) fail(Errc::parse_error, "zero denominator in '" + text + "'");
    q.canonicalize();
    Coeff c(field);
    c.rat_ = q;
    return c;
}

bool Coeff::is_zero() const { return p_ > 0 ? res_ == 0 : rat_ == 0; }

bool Coeff::is_one() const { return p_ > 0 ? res_ == 1 % p_ : rat_ == 1; }

void Coeff::check_same_field(const Coeff& rhs) const {
    if (p_ != rhs.p_)
        fail(Errc::field_mismatch, "characteristic " + std::to_string(p_) + " vs " +
                                       std::to_string(rhs.p_));
}

Coeff Coeff::operator+(const Coeff& rhs) const {
    check_same_field(rhs);
    Coeff out = *this;
    if (p_ > 0) {
        out.res_ = (res_ + rhs.res_) % p_;
    } else {
        out.rat_ = rat_ + rhs.rat_;
    }
    return out;
}

Coeff Coeff::operator-(const Coeff& rhs) const { return *this + (-rhs); }

Coeff Coeff::operator*(const Coeff& rhs) const {
    check_same_field(rhs);
    Coeff out = *this;
    if (p_ > 0) {
        out.res_ = mod_mul(res_, rhs.res_, p_);
    } else {
        out.rat_ = rat_ * rhs.rat_;
    }
    return out;
}

Coeff Coeff::operator-() const {
    Coeff out = *this;
    if (p_ > 0) {
        out.res_ = res_ == 0 ? 0 : p_ - res_;
    } else {
        out.rat_ = -rat_;
    }
    return out;
}

bool Coeff::operator==(const Coeff& rhs) const {
    if (p_ != rhs.p_) return false;
    return p_ > 0 ? res_ == rhs.res_ : rat_ == rhs.rat_;
}

Coeff Coeff::inverse() const {
    if (is_zero()) fail(Errc::division_by_zero, "inverse of zero");
    Coeff out = *this;
    if (p_ > 0) {
        out.res_ = mod_pow(res_, p_ - 2, p_);
    } else {
        out.rat_ = 1 / rat_;
    }
    return out;
}

Coeff Coeff::pow(std::uint64_t k) const {
    Coeff out = *this;
    if (p_ > 0) {
        out.res_ = mod_pow(res_, k, p_);
    } else {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), rat_.get_num().get_mpz_t(), static_cast<unsigned long>(k));
        mpz_pow_ui(den.get_mpz_t(), rat_.get_den().get_mpz_t(), static_cast<unsigned long>(k));
        out.rat_ = mpq_class(num, den);
        out.rat_.canonicalize();
    }
    return out;
}

std::string Coeff::str() const {
    if (p_ > 0) return std::to_string(res_);
    return rat_.get_str();
}

Coeff binomial_in_field(const FieldSpec& field, std::uint64_t n, std::uint64_t k) {
    if (k > n) return Coeff(field);
    std::uint64_t p = field.characteristic;
    if (p == 0) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return Coeff::from_mpq(field, mpq_class(b));
    }
    // Lucas: product of small binomials over base-p digits.
    std::uint64_t acc = 1;
    while (n > 0 || k > 0) {
        std::uint64_t nd = n % p;
        std::uint64_t kd = k % p;
        if (kd > nd) return Coeff(field);
        // nd, kd < p < 2^31; compute C(nd, kd) mod p by the multiplicative formula.
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t t = 0; t < kd; ++t) {
            num = mod_mul(num, (nd - t) % p, p);
            den = mod_mul(den, (t + 1) % p, p);
        }
        acc = mod_mul(acc, mod_mul(num, mod_pow(den, p - 2, p), p), p);
        n /= p;
        k /= p;
    }
    Coeff c(field);
    c = Coeff::from_int(field, static_cast<long long>(acc));
    return c;
}

}  // namespace pbrigid
