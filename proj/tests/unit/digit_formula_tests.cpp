#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "corput/digit_formula.hpp"
#include "corput/discrepancy.hpp"

using namespace corput;

namespace {

Rational q(long long n, long long d) { return make_rational(BigInt(n), BigInt(d)); }

// Literal double-sum evaluation: sum_i ((b+1)a_i - a_i^2)/(2b) minus
// sum_{i<j} a_i a_j / b^{j-i+1}. Quadratic on purpose; it is the oracle for
// the linear-time accumulator.
Rational s_literal_double_sum(std::uint64_t n, Base b) {
    const auto dv = digits_of(n, b);
    const auto& a = dv.digits;
    Rational total(0);
    const BigInt bb(b.value());
    for (std::size_t i = 0; i < a.size(); ++i)
        total += make_rational(BigInt((bb + 1) * a[i] - BigInt(a[i]) * a[i]), 2 * bb);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            total -= make_rational(BigInt(a[i]) * a[j],
                                   boost::multiprecision::pow(bb, unsigned(j - i + 1)));
    return total;
}

} // namespace

TEST_CASE("moment constants match the printed closed forms") {
    const auto m2 = MomentConstants::for_base(Base(2));
    REQUIRE(m2.c_b == q(1, 8));
    REQUIRE(m2.d_b == q(1, 192));
    for (std::uint32_t bv = 2; bv <= 50; ++bv) {
        const auto mc = MomentConstants::for_base(Base(bv));
        REQUIRE(mc.c_b > 0);
        REQUIRE(mc.d_b > 0);
    }
}

TEST_CASE("digit formula hand values") {
    REQUIRE(s_of_n_digits(3, Base(2)) == q(3, 4));
    REQUIRE(s_of_n_digits(4, Base(2)) == q(1, 2));
    REQUIRE(s_of_n_digits(5, Base(3)) == q(17, 18));
    REQUIRE(s_of_n_digits(0, Base(2)) == Rational(0));
}

TEST_CASE("digit formula accepts zero-padded digit vectors") {
    REQUIRE(s_of_n_digits(digits_of_padded(3, Base(2), 8)) == q(3, 4));
    REQUIRE(s_of_n_digits(digits_of_padded(0, Base(5), 4)) == Rational(0));
}

TEST_CASE("digit formula equals direct summation") {
    for (std::uint32_t bv : {2u, 3u, 5u}) {
        const Base b(bv);
        for (std::uint64_t n = 0; n <= 2048; ++n)
            REQUIRE(s_of_n_digits(n, b) == s_of_n_direct(n, b));
    }
}

TEST_CASE("linear accumulator matches the literal double sum on large n") {
    std::mt19937_64 rng(0);
    for (std::uint32_t bv : {2u, 3u, 10u}) {
        const Base b(bv);
        for (int i = 0; i < 20; ++i) {
            const std::uint64_t n = (1ull << 50) - 5'000'000 + rng() % 10'000'000;
            REQUIRE(s_of_n_digits(n, b) == s_literal_double_sum(n, b));
        }
    }
}

TEST_CASE("expected running sum closed form") {
    REQUIRE(expected_s(Base(2), 1) == q(1, 4));
    REQUIRE(expected_s(Base(2), 2) == q(7, 16));
    REQUIRE(expected_s(Base(3), 1) == q(7, 18));
    for (std::uint32_t bv : {2u, 3u, 7u}) {
        const Base b(bv);
        const auto mc = MomentConstants::for_base(b);
        for (unsigned m = 1; m <= 30; ++m) {
            const Rational gap = expected_s(b, m) - mc.c_b * m;
            REQUIRE(abs(gap) <= q(1, 4)); // exactly 1/4 - 1/(4 b^m)
        }
    }
}

TEST_CASE("brute-force moments, small hand cases") {
    const auto m1 = brute_moments(Base(2), 1, 4);
    REQUIRE(m1.mean == q(1, 4));
    REQUIRE(m1.central[2] == q(1, 16));
    REQUIRE(m1.central[4] == q(1, 256));

    // Values {0, 1/2, 1/2, 3/4}: mean 7/16, exact variance 19/256.
    const auto m2 = brute_moments(Base(2), 2, 2);
    REQUIRE(m2.mean == q(7, 16));
    REQUIRE(m2.central[2] == q(19, 256));
}

TEST_CASE("enumerated mean equals the closed form") {
    for (std::uint32_t bv : {2u, 3u}) {
        const Base b(bv);
        for (unsigned m = 1; m <= 6; ++m)
            REQUIRE(brute_moments(b, m, 2).mean == expected_s(b, m));
    }
    REQUIRE(brute_moments(Base(5), 3, 2).mean == expected_s(Base(5), 3));
}

TEST_CASE("moment bookkeeping rejects bad orders and oversized runs") {
    REQUIRE_THROWS_AS(brute_moments(Base(2), 3, 3), ValidationError);
    REQUIRE_THROWS_AS(brute_moments(Base(2), 3, 0), ValidationError);
    REQUIRE_THROWS_AS(brute_moments(Base(2), 21, 2), ResourceLimitError);
}

TEST_CASE("variance drift shrinks monotonically") {
    const auto drift2 = variance_drift(Base(2), 11);
    REQUIRE(drift2.size() == 11);
    // Successive |Var_{m+1} - Var_m - d| follow (m-1) / 2^{m+5} up to an
    // exponentially smaller correction, so they rise once at m=3 and then
    // shrink strictly. Start the monotonicity sweep past the rise.
    std::vector<Rational> diff2;
    for (std::size_t i = 0; i + 1 < drift2.size(); ++i)
        diff2.push_back(abs(drift2[i + 1].second - drift2[i].second));
    REQUIRE(diff2.size() == 10);
    REQUIRE(diff2[2] == make_rational(BigInt(91), BigInt(12288)));
    for (std::size_t i = 2; i + 1 < diff2.size(); ++i)
        REQUIRE(diff2[i + 1] < diff2[i]);
}

TEST_CASE("changing one digit moves the sum by a bounded amount") {
    for (std::uint32_t bv : {2u, 3u}) {
        const Base b(bv);
        const Rational bound =
            make_rational(BigInt(bv + 1) * (bv + 1), BigInt(8) * bv) + 2;
        const unsigned m = bv == 2 ? 6 : 5;
        const std::uint64_t total = pow_u64(b, m);
        for (std::uint64_t n = 0; n < total; ++n) {
            const Rational s_n = s_of_n_digits(n, b);
            auto dv = digits_of_padded(n, b, m);
            for (unsigned pos = 0; pos < m; ++pos) {
                const std::uint32_t old = dv.digits[pos];
                for (std::uint32_t alt = 0; alt < bv; ++alt) {
                    if (alt == old) continue;
                    dv.digits[pos] = alt;
                    REQUIRE(abs(s_of_n_digits(dv) - s_n) <= bound);
                }
                dv.digits[pos] = old;
            }
        }
    }
}
