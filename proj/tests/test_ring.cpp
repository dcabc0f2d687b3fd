#include <doctest.h>

#include <random>

#include "pbrigid/ring.hpp"
#include "helpers.hpp"

using namespace pbrigid;
using pbrigid::testing::mono;
using pbrigid::testing::raised;

namespace {

Poly random_raw(const FieldSpec& field, std::size_t nvars, std::mt19937_64& rng) {
    Poly f(field, nvars);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        Exponents e(nvars + 2, 0);
        for (std::size_t i = 0; i < nvars; ++i) e[i] = rng() % 7;
        long long c = static_cast<long long>(rng() % 5) - 2;
        f = f + mono(field, nvars, e, c);
    }
    return f;
}

}  // namespace

TEST_CASE("presentation construction and validation") {
    FieldSpec q = make_field(0);
    auto b = RingPresentation::pham_brieskorn(q, {2, 3, 5});
    CHECK(b->nvars() == 3);
    CHECK(b->reduction_degree() == 2);
    CHECK(b->is_domain() == true);
    CHECK(b->relation().term_count() == 3);

    CHECK(raised([&] { RingPresentation::pham_brieskorn(q, {2}); }) == Errc::invalid_tuple);
    CHECK(raised([&] { RingPresentation::pham_brieskorn(q, {2, 0, 3}); }) == Errc::invalid_tuple);
    CHECK(raised([&] { RingPresentation::pham_brieskorn(q, {2, 3}, 0); }) == Errc::invalid_tuple);
}

TEST_CASE("domain flag follows the gcd criterion") {
    CHECK(RingPresentation::pham_brieskorn(make_field(2), {2, 3, 5})->is_domain() == true);
    CHECK(RingPresentation::pham_brieskorn(make_field(2), {2, 4, 6})->is_domain() == false);
    CHECK(RingPresentation::pham_brieskorn(make_field(3), {3, 6, 9})->is_domain() == false);
    CHECK(RingPresentation::pham_brieskorn(make_field(5), {2, 4, 6})->is_domain() == true);
    CHECK(RingPresentation::pham_brieskorn(make_field(0), {2, 4, 6})->is_domain() == true);
    // A proper relation power is never reduced, hence never a domain.
    CHECK(RingPresentation::pham_brieskorn(make_field(2), {1, 2, 3}, 2)->is_domain() == false);
}

TEST_CASE("power presentations expand the relation by Frobenius in char p") {
    FieldSpec f2 = make_field(2);
    auto pres = RingPresentation::pham_brieskorn(f2, {1, 2, 3}, 2);
    // (X + Y^2 + Z^3)^2 == X^2 + Y^4 + Z^6 over F_2.
    auto flat = RingPresentation::pham_brieskorn(f2, {2, 4, 6});
    CHECK(pres->relation() == flat->relation());
    CHECK(pres->reduction_degree() == 2);
}

TEST_CASE("xr_plus_h construction and validation") {
    FieldSpec q = make_field(0);
    Poly y = Poly::variable(q, 3, 1);
    Poly z = Poly::variable(q, 3, 2);
    auto c = RingPresentation::xr_plus_h(q, 3, 3, y.pow(2) * z.pow(2) + y);
    CHECK(c->reduction_degree() == 3);
    CHECK(c->kind() == RingKind::xr_plus_h);

    Poly x = Poly::variable(q, 3, 0);
    CHECK(raised([&] { RingPresentation::xr_plus_h(q, 3, 3, x * y); }) == Errc::invalid_relation);
    CHECK(raised([&] { RingPresentation::xr_plus_h(q, 3, 0, y); }) == Errc::invalid_relation);
    CHECK(raised([&] { RingPresentation::xr_plus_h(q, 3, 3, Poly::u(q, 3)); }) ==
          Errc::invalid_relation);
}

TEST_CASE("shape-based primality of graded relations") {
    FieldSpec q = make_field(0);
    Poly y = Poly::variable(q, 3, 1);
    Poly z = Poly::variable(q, 3, 2);
    // X^2 + Y^3 + Z^5: Pham-Brieskorn shape, gcd criterion.
    CHECK(relation_shape_primality(q, 3, 2, y.pow(3) + z.pow(5)) == PrimalityCheck::prime);
    FieldSpec f2 = make_field(2);
    Poly y2 = Poly::variable(f2, 3, 1);
    Poly z2 = Poly::variable(f2, 3, 2);
    CHECK(relation_shape_primality(f2, 3, 2, y2.pow(4) + z2.pow(6)) == PrimalityCheck::not_prime);
    // X^3 + Y^2*Z^2: two-variable monomial tail, plain gcd == 1.
    CHECK(relation_shape_primality(q, 3, 3, y.pow(2) * z.pow(2)) == PrimalityCheck::prime);
    CHECK(relation_shape_primality(q, 3, 2, y.pow(2) * z.pow(4)) == PrimalityCheck::not_prime);
    // Mixed tails are not certified.
    CHECK(relation_shape_primality(q, 3, 2, y * z + y) == PrimalityCheck::unchecked);
    CHECK(relation_shape_primality(q, 3, 2, y.pow(2) + Poly::constant_int(q, 3, 1)) ==
          PrimalityCheck::unchecked);
}

TEST_CASE("normal form rewrites the reduction variable") {
    FieldSpec q = make_field(0);
    auto b = RingPresentation::pham_brieskorn(q, {2, 3, 5});
    Poly x = Poly::variable(q, 3, 0);
    Poly y = Poly::variable(q, 3, 1);
    Poly z = Poly::variable(q, 3, 2);
    CHECK(b->normal_form(x.pow(2)) == -(y.pow(3) + z.pow(5)));
    CHECK(b->normal_form(x.pow(3)) == -(x * y.pow(3) + x * z.pow(5)));
    CHECK(b->normal_form(b->relation()).is_zero());
    CHECK(b->normal_form(y.pow(9)) == y.pow(9));  // only X1 reduces

    // U and V pass through reduction untouched.
    Poly with_u = x.pow(2) * Poly::u(q, 3);
    CHECK(b->normal_form(with_u) == -(y.pow(3) + z.pow(5)) * Poly::u(q, 3));
}

TEST_CASE("normal form properties hold on random elements") {
    std::mt19937_64 rng(2026);
    for (std::uint64_t p : {0ULL, 2ULL, 7ULL}) {
        FieldSpec field = make_field(p);
        auto b = RingPresentation::pham_brieskorn(field, {2, 3, 4});
        for (int trial = 0; trial < 25; ++trial) {
            Poly f = random_raw(field, 3, rng);
            Poly g = random_raw(field, 3, rng);
            Poly nf = b->normal_form(f);
            CHECK(b->normal_form(nf) == nf);
            CHECK(nf.degree_in(0) < b->reduction_degree());
            CHECK(b->normal_form(f * g) == b->normal_form(b->normal_form(f) * b->normal_form(g)));
            CHECK(b->normal_form(b->relation() * f).is_zero());
        }
    }
}

TEST_CASE("elements compare within one presentation only") {
    FieldSpec q = make_field(0);
    auto b = RingPresentation::pham_brieskorn(q, {2, 3, 5});
    auto other = RingPresentation::pham_brieskorn(q, {2, 3, 7});
    Poly x = Poly::variable(q, 3, 0);
    Poly y = Poly::variable(q, 3, 1);
    Poly z = Poly::variable(q, 3, 2);
    RingElement e1 = make_element(b, x.pow(2));
    RingElement e2 = make_element(b, -(y.pow(3) + z.pow(5)));
    CHECK(e1 == e2);
    CHECK(generator(b, 0) * generator(b, 0) == e1);
    CHECK(raised([&] { (void)(e1 == make_element(other, x)); }) == Errc::presentation_mismatch);
    auto same = RingPresentation::pham_brieskorn(q, {2, 3, 5});
    CHECK(e1 == make_element(same, x.pow(2)));  // structural equality, distinct objects
}
