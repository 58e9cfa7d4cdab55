#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "corput/radix.hpp"

using namespace corput;

TEST_CASE("Base rejects anything below 2") {
    REQUIRE_THROWS_WITH(Base(0), "base must be >= 2");
    REQUIRE_THROWS_WITH(Base(1), "base must be >= 2");
    REQUIRE_NOTHROW(Base(2));
    REQUIRE(Base(10).value() == 10u);
}

TEST_CASE("digits_of produces canonical least-significant-first digits") {
    REQUIRE(digits_of(0, Base(2)).digits.empty());

    const DigitVec six = digits_of(6, Base(2));
    REQUIRE(six.digits == std::vector<std::uint32_t>{0, 1, 1});

    const DigitVec hundred = digits_of(100, Base(10));
    REQUIRE(hundred.digits == std::vector<std::uint32_t>{0, 0, 1});
}

TEST_CASE("digit round trip over several bases") {
    for (std::uint32_t bv : {2u, 3u, 5u, 7u, 10u}) {
        const Base b(bv);
        for (std::uint64_t n = 0; n <= 2000; ++n) REQUIRE(value_of(digits_of(n, b)) == n);
    }
}

TEST_CASE("padded digits keep the value and reject overflow") {
    const DigitVec padded = digits_of_padded(6, Base(2), 6);
    REQUIRE(padded.digits.size() == 6);
    REQUIRE(value_of(padded) == 6);
    REQUIRE_THROWS_AS(digits_of_padded(8, Base(2), 3), ValidationError);
}

TEST_CASE("radical inverse matches hand values") {
    REQUIRE(radical_inverse(0, Base(2)) == Rational(0));
    REQUIRE(radical_inverse(3, Base(2)) == make_rational(BigInt(3), BigInt(4)));
    REQUIRE(radical_inverse(5, Base(3)) == make_rational(BigInt(7), BigInt(9)));
}

TEST_CASE("radical inverse times b^m is an integer in [0, b^m)") {
    for (std::uint32_t bv : {2u, 3u, 7u}) {
        const Base b(bv);
        for (std::uint64_t n = 0; n < 500; ++n) {
            const unsigned m = digit_count(n, b);
            const Rational x = radical_inverse(n, b);
            const Rational scaled = x * BigInt(pow_u64(b, m));
            REQUIRE(den(scaled) == 1);
            REQUIRE(x >= 0);
            REQUIRE(x < 1);
        }
    }
}

TEST_CASE("sequence_prefix hand values") {
    const auto p4 = sequence_prefix(4, Base(2));
    REQUIRE(p4 == std::vector<Rational>{Rational(0), make_rational(BigInt(1), BigInt(2)),
                                        make_rational(BigInt(1), BigInt(4)),
                                        make_rational(BigInt(3), BigInt(4))});
    const auto p3 = sequence_prefix(3, Base(3));
    REQUIRE(p3 == std::vector<Rational>{Rational(0), make_rational(BigInt(1), BigInt(3)),
                                        make_rational(BigInt(2), BigInt(3))});
    REQUIRE(sequence_prefix(1, Base(7)) == std::vector<Rational>{Rational(0)});
}

TEST_CASE("a full block is a permutation of the b^m grid") {
    const std::vector<std::pair<std::uint32_t, unsigned>> cases{{2, 10}, {3, 6}, {5, 4}};
    for (auto [bv, m] : cases) {
        const Base b(bv);
        const std::uint64_t scale = pow_u64(b, m);
        RadicalInverseWalker w(b, m, 0);
        std::vector<std::uint64_t> seen;
        seen.reserve(scale);
        for (std::uint64_t n = 0; n < scale; ++n) {
            seen.push_back(w.scaled());
            if (n + 1 < scale) w.advance();
        }
        std::sort(seen.begin(), seen.end());
        for (std::uint64_t k = 0; k < scale; ++k) REQUIRE(seen[k] == k);
    }
}

TEST_CASE("walker agrees with radical_inverse from arbitrary starts") {
    for (std::uint64_t start : {0ull, 1ull, 999ull, 12345ull}) {
        const Base b(3);
        const unsigned m = digit_count(start + 600, b);
        RadicalInverseWalker w(b, m, start);
        const std::uint64_t scale = w.scale();
        for (std::uint64_t n = start; n < start + 600; ++n) {
            const Rational expect = radical_inverse(n, b);
            REQUIRE(make_rational(BigInt(w.scaled()), BigInt(scale)) == expect);
            w.advance();
        }
    }
}

TEST_CASE("caps and overflow guards") {
    REQUIRE_THROWS_AS(sequence_prefix(caps::sequence_prefix + 1, Base(2)),
                      ResourceLimitError);
    REQUIRE_THROWS_AS(pow_u64(Base(10), 20), ResourceLimitError);
    REQUIRE(pow_u64(Base(2), 32) == (1ull << 32));
}

TEST_CASE("digit_count counts positional digits") {
    REQUIRE(digit_count(0, Base(2)) == 0);
    REQUIRE(digit_count(1, Base(2)) == 1);
    REQUIRE(digit_count(7, Base(2)) == 3);
    REQUIRE(digit_count(8, Base(2)) == 4);
    REQUIRE(digit_count(80, Base(3)) == 4);
    REQUIRE(digit_count(81, Base(3)) == 5);
}
