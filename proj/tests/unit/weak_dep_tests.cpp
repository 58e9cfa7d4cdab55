#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "corput/weak_dep.hpp"

using namespace corput;

namespace {
Rational q(long long n, long long d) { return make_rational(BigInt(n), BigInt(d)); }
} // namespace

TEST_CASE("q constant closed forms") {
    REQUIRE(moment_bound_q(2, std::log(2.0)) == Catch::Approx(32.0).epsilon(1e-12));
    REQUIRE(moment_bound_q(3, std::log(2.0)) == Catch::Approx(128.0).epsilon(1e-12));
    // huge decay: the denominator saturates at 1
    REQUIRE(moment_bound_q(2, 50.0) == Catch::Approx(std::pow(2.0, 2.5)).epsilon(1e-10));
    REQUIRE_THROWS_AS(moment_bound_q(1, 1.0), ValidationError);
    REQUIRE_THROWS_AS(moment_bound_q(2, 0.0), ValidationError);
}

TEST_CASE("sparse exponential series against its closed form") {
    // for arity 2 the series sums x^{4k}/(4k)! = (cosh x + cos x)/2
    REQUIRE(moment_series_g(2, 0.0) == 1.0);
    REQUIRE(moment_series_g(2, 1.0) ==
            Catch::Approx((std::cosh(1.0) + std::cos(1.0)) / 2.0).epsilon(1e-12));
    REQUIRE(moment_series_g(2, 2.0) >= (std::exp(2.0) - 2.0) / 4.0);
    for (double x = 0.0; x <= 5.0; x += 0.25)
        REQUIRE(moment_series_g(2, x) ==
                Catch::Approx((std::cosh(x) + std::cos(x)) / 2.0).epsilon(1e-12));
    REQUIRE_THROWS_AS(moment_series_g(2, -1.0), ValidationError);
    REQUIRE_THROWS_AS(moment_series_g(0, 1.0), ValidationError);
}

TEST_CASE("family construction validates subsets") {
    auto zero = [](const std::vector<std::uint32_t>&) { return Rational(0); };
    using E = WeakDepFamily::Entry;
    REQUIRE_NOTHROW(WeakDepFamily(Base(2), 4, 2, 1.0, {E{{1}, zero}, E{{2, 4}, zero}}));
    REQUIRE_THROWS_AS(WeakDepFamily(Base(2), 4, 2, 1.0, {E{{0u, 1u}, zero}}),
                      InvariantError);
    REQUIRE_THROWS_AS(WeakDepFamily(Base(2), 4, 2, 1.0, {E{{5u}, zero}}), InvariantError);
    REQUIRE_THROWS_AS(WeakDepFamily(Base(2), 4, 2, 1.0, {E{{3u, 2u}, zero}}),
                      InvariantError);
    REQUIRE_THROWS_AS(WeakDepFamily(Base(2), 4, 2, 1.0, {E{{2u, 2u}, zero}}),
                      InvariantError);
    REQUIRE_THROWS_AS(WeakDepFamily(Base(2), 4, 2, 1.0, {E{{1u, 2u, 3u}, zero}}),
                      InvariantError);
    REQUIRE_THROWS_AS(WeakDepFamily(Base(2), 1, 2, 1.0, {}), ValidationError);
    REQUIRE_THROWS_AS(WeakDepFamily(Base(2), 4, 1, 1.0, {}), ValidationError);
    REQUIRE_THROWS_AS(WeakDepFamily(Base(2), 4, 2, 0.0, {}), ValidationError);
}

TEST_CASE("construction rejects uncentered or oversized terms") {
    auto ones = [](const std::vector<std::uint32_t>&) { return Rational(1); };
    REQUIRE_THROWS_WITH(
        WeakDepFamily(Base(2), 4, 2, std::log(2.0), {WeakDepFamily::Entry{{1}, ones}}),
        Catch::Matchers::ContainsSubstring("not centered"));

    // centered but three times the allowed size
    auto parity3 = [](const std::vector<std::uint32_t>& v) {
        return v[0] == 0 ? Rational(3) : Rational(-3);
    };
    REQUIRE_THROWS_WITH(
        WeakDepFamily(Base(2), 4, 2, std::log(2.0), {WeakDepFamily::Entry{{1}, parity3}}),
        Catch::Matchers::ContainsSubstring("exceeds"));

    // fine at distance 1, too big once the subset spans the whole window
    auto quarter = [](const std::vector<std::uint32_t>& v) {
        return (v[0] + v[1]) % 2 == 0 ? q(1, 4) : q(-1, 4);
    };
    REQUIRE_NOTHROW(WeakDepFamily(Base(2), 4, 2, std::log(2.0),
                                  {WeakDepFamily::Entry{{1, 2}, quarter}}));
    REQUIRE_THROWS_WITH(WeakDepFamily(Base(2), 4, 2, std::log(2.0),
                                      {WeakDepFamily::Entry{{1, 4}, quarter}}),
                        Catch::Matchers::ContainsSubstring("exceeds"));
}

TEST_CASE("term summation addresses the right digit slots") {
    // f_{1}(x) = x - 1/2 on bit 1, f_{2,3}(x,y) = (xy - 1/4)/4
    auto center1 = [](const std::vector<std::uint32_t>& v) {
        return Rational(v[0]) - q(1, 2);
    };
    auto cross = [](const std::vector<std::uint32_t>& v) {
        return (Rational(v[0]) * v[1] - q(1, 4)) / 4;
    };
    WeakDepFamily fam(Base(2), 3, 2, std::log(2.0),
                      {WeakDepFamily::Entry{{1}, center1},
                       WeakDepFamily::Entry{{2, 3}, cross}});
    // digits (1, 0, 1): f_1 = 1/2, cross = (0 - 1/4)/4 = -1/16
    REQUIRE(fam.sum_terms({1, 0, 1}) == q(7, 16));
    REQUIRE_THROWS_AS(fam.sum_terms({1, 0}), ValidationError);
}

TEST_CASE("moment bound for the empty family is trivial") {
    WeakDepFamily fam(Base(2), 3, 2, 1.0, {});
    const auto rep = check_moment_bound(fam, Base(2), 1);
    REQUIRE(rep.moment == Rational(0));
    REQUIRE(rep.satisfied);
    REQUIRE_THROWS_AS(check_moment_bound(fam, Base(3), 1), ValidationError);
    REQUIRE_THROWS_AS(check_moment_bound(fam, Base(2), 3), ValidationError);
}

TEST_CASE("standard family reproduces the centered running sum") {
    for (std::uint32_t bv : {2u, 3u, 4u, 5u}) {
        for (unsigned m : {2u, 3u}) {
            const auto fam = standard_family_for_s(Base(bv), m);
            REQUIRE(standard_family_identity_holds(fam, Base(bv)));
        }
    }
}

TEST_CASE("standard family construction passes its own invariants") {
    for (std::uint32_t bv = 2; bv <= 5; ++bv)
        REQUIRE_NOTHROW(standard_family_for_s(Base(bv), 4));
    REQUIRE_THROWS_AS(standard_family_for_s(Base(2), 1), ValidationError);
}

TEST_CASE("exhaustive moment bounds for the standard family") {
    const auto fam = standard_family_for_s(Base(2), 4);
    const auto r1 = check_moment_bound(fam, Base(2), 1);
    REQUIRE(r1.satisfied);
    REQUIRE(r1.bound == Catch::Approx(32.0 * 32.0 * 24.0 * 4.0).epsilon(1e-12));
    const auto r2 = check_moment_bound(fam, Base(2), 2);
    REQUIRE(r2.satisfied);
    REQUIRE(r2.bound == Catch::Approx(std::pow(32.0, 4.0) * 40320.0 * 16.0).epsilon(1e-12));
    // moments are variances of a genuinely random quantity: strictly positive
    REQUIRE(r1.moment > 0);
    REQUIRE(r2.moment > 0);
}
