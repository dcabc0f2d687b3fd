#include "pbrigid/search.hpp"

#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "pbrigid/ring.hpp"

using namespace pbrigid;
using testing::mono;
using testing::raised;

namespace {

bool contains_map(const std::vector<ExpMap>& maps, const std::vector<Poly>& images) {
    return std::any_of(maps.begin(), maps.end(), [&](const ExpMap& m) {
        for (std::size_t i = 0; i < images.size(); ++i)
            if (m.image(i) != images[i]) return false;
        return true;
    });
}

}  // namespace

TEST_CASE("masked constant search rediscovers the power-pair witness") {
    auto f2 = make_field(2);
    auto pres = RingPresentation::pham_brieskorn(f2, {2, 3, 4});
    SearchBounds bounds;
    bounds.max_u_degree = 2;
    bounds.max_total_degree = 0;
    bounds.variable_mask = std::vector<std::size_t>{0, 2};

    auto outcome = enumerate_maps(pres, bounds);
    CHECK(outcome.unknowns == 2);
    CHECK(outcome.rank == 0);
    CHECK(outcome.candidates == 8);
    REQUIRE(outcome.maps.size() == 1);

    std::vector<Poly> witness = {
        mono(f2, 3, {1, 0, 0, 0, 0}, 1) + mono(f2, 3, {0, 0, 0, 2, 0}, 1),
        mono(f2, 3, {0, 1, 0, 0, 0}, 1),
        mono(f2, 3, {0, 0, 1, 0, 0}, 1) + mono(f2, 3, {0, 0, 0, 1, 0}, 1)};
    CHECK(contains_map(outcome.maps, witness));
    CHECK(outcome.maps[0].is_verified());
    CHECK_FALSE(is_trivial(outcome.maps[0]));
}

TEST_CASE("full search on a stably rigid ring finds nothing") {
    auto f2 = make_field(2);
    auto pres = RingPresentation::pham_brieskorn(f2, {3, 3, 3});
    SearchBounds bounds;
    bounds.max_u_degree = 2;
    bounds.max_total_degree = 2;

    auto outcome = enumerate_maps(pres, bounds);
    CHECK(outcome.unknowns == 30);
    // 30 columns minus 4 relation multiples minus 3 colliding monomial pairs.
    CHECK(outcome.rank == 23);
    CHECK(outcome.maps.empty());
    CHECK(outcome.candidates > 0);
}

TEST_CASE("linear coefficients are searched too") {
    auto f2 = make_field(2);
    auto pres = RingPresentation::pham_brieskorn(f2, {3, 2, 2});
    SearchBounds bounds;
    bounds.max_u_degree = 1;
    bounds.max_total_degree = 1;

    auto outcome = enumerate_maps(pres, bounds);
    std::vector<Poly> planted = {
        mono(f2, 3, {1, 0, 0, 0, 0}, 1),
        mono(f2, 3, {0, 1, 0, 0, 0}, 1) + mono(f2, 3, {1, 0, 0, 1, 0}, 1),
        mono(f2, 3, {0, 0, 1, 0, 0}, 1) + mono(f2, 3, {1, 0, 0, 1, 0}, 1)};
    CHECK(contains_map(outcome.maps, planted));

    std::vector<Poly> constant_slide = {
        mono(f2, 3, {1, 0, 0, 0, 0}, 1),
        mono(f2, 3, {0, 1, 0, 0, 0}, 1) + mono(f2, 3, {0, 0, 0, 1, 0}, 1),
        mono(f2, 3, {0, 0, 1, 0, 0}, 1) + mono(f2, 3, {0, 0, 0, 1, 0}, 1)};
    CHECK(contains_map(outcome.maps, constant_slide));

    for (const auto& m : outcome.maps) {
        CHECK(m.is_verified());
        CHECK_FALSE(is_trivial(m));
    }

    SUBCASE("identical runs yield identical streams") {
        auto again = enumerate_maps(pres, bounds);
        REQUIRE(again.maps.size() == outcome.maps.size());
        for (std::size_t k = 0; k < again.maps.size(); ++k)
            for (std::size_t i = 0; i < 3; ++i)
                CHECK(again.maps[k].image(i) == outcome.maps[k].image(i));
    }
}

TEST_CASE("bounds admitting only the identity yield an empty stream") {
    auto f2 = make_field(2);
    auto pres = RingPresentation::pham_brieskorn(f2, {2, 3, 4});

    SearchBounds no_layers;
    no_layers.max_u_degree = 0;
    auto a = enumerate_maps(pres, no_layers);
    CHECK(a.maps.empty());
    CHECK(a.candidates == 1);

    SearchBounds no_movers;
    no_movers.variable_mask = std::vector<std::size_t>{};
    auto b = enumerate_maps(pres, no_movers);
    CHECK(b.maps.empty());
    CHECK(b.candidates == 1);
}

TEST_CASE("search refusals") {
    SUBCASE("branch bound above the ceiling") {
        auto f5 = make_field(5);
        auto pres = RingPresentation::pham_brieskorn(f5, {5, 5, 2});
        SearchBounds bounds;
        bounds.max_u_degree = 1;
        bounds.max_total_degree = 1;
        bounds.ceiling = 1u << 16;
        CHECK(raised([&] { enumerate_maps(pres, bounds); }) == Errc::search_space_too_large);
    }
    SUBCASE("rationals are not searchable") {
        auto pres = RingPresentation::pham_brieskorn(make_field(0), {2, 3, 4});
        CHECK(raised([&] { enumerate_maps(pres, SearchBounds{}); }) ==
              Errc::invalid_characteristic);
    }
    SUBCASE("mask outside the generators") {
        auto pres = RingPresentation::pham_brieskorn(make_field(2), {2, 3, 4});
        SearchBounds bounds;
        bounds.variable_mask = std::vector<std::size_t>{5};
        CHECK(raised([&] { enumerate_maps(pres, bounds); }) == Errc::arity_mismatch);
    }
}

TEST_CASE("cross-check confirms a non-rigid verdict") {
    SearchBounds bounds;
    bounds.max_u_degree = 2;
    bounds.max_total_degree = 0;
    auto report = cross_check({2, 3, 4}, 2, bounds);
    CHECK(report.verdict.rule == "R3");
    CHECK(report.flag == CrossCheckFlag::confirmed);
    CHECK(report.found == 1);
    CHECK(report.witness_rediscovered);
    CHECK(report.detail.find("rediscovered") != std::string::npos);
    CHECK(std::string(cross_check_flag_name(report.flag)) == "CONFIRMED");
}

TEST_CASE("cross-check is consistent when nothing is found") {
    SearchBounds bounds;
    bounds.max_u_degree = 2;
    bounds.max_total_degree = 2;
    auto report = cross_check({3, 3, 3}, 2, bounds);
    CHECK(report.verdict.status == RigidityStatus::stably_rigid);
    CHECK(report.flag == CrossCheckFlag::consistent);
    CHECK(report.found == 0);
    CHECK(report.detail.find("no map found") != std::string::npos);

    SearchBounds small;
    small.max_u_degree = 1;
    small.max_total_degree = 1;
    auto rigid = cross_check({2, 3, 5}, 7, small);
    CHECK(rigid.verdict.rule == "R6");
    CHECK(rigid.flag == CrossCheckFlag::consistent);
    CHECK(rigid.found == 0);
}

TEST_CASE("cross-check confirms a non-domain verdict without the factored witness") {
    SearchBounds bounds;
    bounds.max_u_degree = 1;
    bounds.max_total_degree = 0;
    auto report = cross_check({2, 2, 2}, 2, bounds);
    CHECK(report.verdict.status == RigidityStatus::non_domain_non_rigid);
    CHECK(report.flag == CrossCheckFlag::confirmed);
    CHECK(report.found == 3);
    CHECK_FALSE(report.witness_rediscovered);
}
