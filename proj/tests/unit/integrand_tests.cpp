#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "corput/integrand.hpp"

using namespace corput;

namespace {
Rational q(long long n, long long d) { return make_rational(BigInt(n), BigInt(d)); }
const double pi = std::acos(-1.0);
} // namespace

TEST_CASE("descriptor parsing round trip") {
    const auto p = Integrand::parse("poly:0,0,1");
    REQUIRE(p.id() == "poly:0,0,1");
    REQUIRE(p.kind() == Integrand::Kind::poly);
    REQUIRE(p.exact());

    const auto s = Integrand::parse("trig:sin,2,0.5");
    REQUIRE(s.kind() == Integrand::Kind::trig_sin);
    REQUIRE_FALSE(s.exact());

    const auto c = Integrand::parse("trig:cos,1,1");
    REQUIRE(c.kind() == Integrand::Kind::trig_cos);

    const auto e = Integrand::parse("exp:-0.5");
    REQUIRE(e.kind() == Integrand::Kind::expo);
}

TEST_CASE("descriptor rejection") {
    REQUIRE_THROWS_AS(Integrand::parse("nonsense"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("spline:1,2"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("poly:"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("poly:1,x"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("trig:tan,1,1"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("trig:sin,0,1"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("trig:sin,1"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("trig:sin,1.5,1"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("trig:sin,-1,1"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("exp:"), ValidationError);
    REQUIRE_THROWS_AS(Integrand::parse("exp:1,2"), ValidationError);
}

TEST_CASE("square integrand constants") {
    const auto f = Integrand::parse("poly:0,0,1");
    REQUIRE(f.integral01_exact() == q(1, 3));
    REQUIRE(f.at0_exact() == Rational(0));
    REQUIRE(f.at1_exact() == Rational(1));
    REQUIRE(f.second_derivative_l1() == Catch::Approx(2.0).epsilon(1e-14));
    REQUIRE(f.total_variation() == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(f.eval_exact(q(1, 2)) == q(1, 4));
    REQUIRE(f(0.5) == Catch::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("variation splits at interior critical points") {
    // x^2 - x falls then rises; the two monotone runs contribute 1/4 each
    const auto f = Integrand::parse("poly:0,-1,1");
    REQUIRE(f.total_variation() == Catch::Approx(0.5).epsilon(1e-12));
    REQUIRE(f.integral01_exact() == q(-1, 6));

    // F' = x^2 - x + 3/16 changes sign at 1/4 and 3/4
    const auto g = Integrand::parse("poly:0,3/16,-1/2,1/3");
    REQUIRE(g.total_variation() == Catch::Approx(1.0 / 16.0).epsilon(1e-10));
}

TEST_CASE("sine integrand constants") {
    const auto f = Integrand::parse("trig:sin,1,1");
    REQUIRE(f.integral01() == 0.0);
    REQUIRE(f.at0() == 0.0);
    REQUIRE(f.at1() == 0.0);
    REQUIRE(f.total_variation() == Catch::Approx(4.0).epsilon(1e-14));
    REQUIRE(f.second_derivative_l1() == Catch::Approx(8.0 * pi).epsilon(1e-14));
    REQUIRE(f(0.25) == Catch::Approx(1.0).epsilon(1e-14));

    const auto g = Integrand::parse("trig:sin,3,-2");
    REQUIRE(g.total_variation() == Catch::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("cosine integrand endpoints carry the amplitude") {
    const auto f = Integrand::parse("trig:cos,2,0.5");
    REQUIRE(f.at0() == 0.5);
    REQUIRE(f.at1() == 0.5);
    REQUIRE(f.integral01() == 0.0);
    REQUIRE(f(0.25) == Catch::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("exponential integrand constants") {
    const auto f = Integrand::parse("exp:1");
    REQUIRE(f.integral01() == Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
    REQUIRE(f.at0() == 1.0);
    REQUIRE(f.at1() == Catch::Approx(std::exp(1.0)).epsilon(1e-15));
    REQUIRE(f.total_variation() == Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
    REQUIRE(f.second_derivative_l1() ==
            Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));

    const auto flat = Integrand::parse("exp:0");
    REQUIRE(flat.integral01() == 1.0);
    REQUIRE(flat.total_variation() == 0.0);
    REQUIRE(flat.second_derivative_l1() == 0.0);
}

TEST_CASE("rational and decimal coefficients agree") {
    const auto f = Integrand::parse("poly:1/2,-3/4");
    REQUIRE(f.coefficients() == std::vector<Rational>{q(1, 2), q(-3, 4)});
    const auto g = Integrand::parse("poly:0.5,2.5e-1");
    REQUIRE(g.coefficients() == std::vector<Rational>{q(1, 2), q(1, 4)});
    for (double x : {0.0, 0.3, 0.7, 1.0})
        REQUIRE(f(x) == Catch::Approx(to_double(f.eval_exact(Rational(x)))).margin(1e-15));
}

TEST_CASE("exact accessors demand a polynomial") {
    const auto f = Integrand::parse("trig:sin,1,1");
    REQUIRE_THROWS_AS(f.coefficients(), InvariantError);
    REQUIRE_THROWS_AS(f.eval_exact(Rational(0)), InvariantError);
    REQUIRE_THROWS_AS(f.integral01_exact(), InvariantError);
    REQUIRE_THROWS_AS(f.at0_exact(), InvariantError);
    REQUIRE_THROWS_AS(f.at1_exact(), InvariantError);
}
