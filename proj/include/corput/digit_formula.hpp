#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "corput/errors.hpp"
#include "corput/limits.hpp"
#include "corput/radix.hpp"
#include "corput/rational.hpp"

namespace corput {

// Drift and dispersion constants of S(N) when the digit width grows:
//   c(b) = (b^2 - 1) / (12 b)
//   d(b) = (b^4 - 1) / (720 b^2)
// d(b) is the per-digit variance rate of S over N < b^m. It decomposes as
// the single-digit term (b^4 + 55 b^2 - 56)/(720 b^2), plus the digit-pair
// term 13 (b^2 - 1)/(144 b^2), minus the cross covariance (b^2 - 1)/(6 b^2);
// the sum telescopes to (b^4 - 1)/(720 b^2). Brute enumeration over every
// N < b^m reproduces this rate for b in {2,3,4,5} (see the moment tests),
// so the value is pinned empirically as well as algebraically.
struct MomentConstants {
    std::uint32_t base;
    Rational c_b;
    Rational d_b;

    static MomentConstants for_base(Base b) {
        const BigInt bb(b.value());
        MomentConstants mc{b.value(), Rational(0), Rational(0)};
        mc.c_b = make_rational(bb * bb - 1, 12 * bb);
        mc.d_b = make_rational(bb * bb * bb * bb - 1, 720 * bb * bb);
        return mc;
    }
};

// S(N) from the digits of N alone. Writing g_j = (N mod b^{j-1}) / b^{j-1}
// for the low-digit prefix carried below position j, the closed form
//   S(N) = sum_j [ ((b+1) a_j - a_j^2) / (2b) - a_j g_j / b ]
// collapses the quadratic digit-pair sum into one forward pass, so the cost
// is O(m) exact operations instead of O(m^2).
inline Rational s_of_n_digits(const DigitVec& d) {
    const Base b(d.base);
    const unsigned m = static_cast<unsigned>(d.digits.size());
    if (m == 0) return Rational(0);
    using boost::multiprecision::pow;
    const BigInt bb(d.base);
    const BigInt top = pow(bb, m - 1); // b^{m-1}
    // A = 2 b^m S(N) stays integral: each j contributes
    // ((b+1) a_j - a_j^2) b^{m-1} - 2 a_j (N mod b^{j-1}) b^{m-j}.
    BigInt accum = 0;
    BigInt prefix = 0;     // N mod b^{j-1}
    BigInt place = 1;      // b^{j-1}
    BigInt codeweight = top; // b^{m-j}... maintained by division below
    for (unsigned j = 1; j <= m; ++j) {
        const BigInt a(d.digits[j - 1]);
        accum += ((bb + 1) * a - a * a) * top - 2 * a * prefix * codeweight;
        prefix += a * place;
        place *= bb;
        if (j < m) codeweight /= bb;
    }
    return make_rational(std::move(accum), 2 * pow(bb, m));
}

inline Rational s_of_n_digits(std::uint64_t n, Base b) {
    return s_of_n_digits(digits_of(n, b));
}

// E S(N) over uniform N < b^m, exactly c(b) m + 1/4 - 1/(4 b^m).
inline Rational expected_s(Base b, unsigned m) {
    using boost::multiprecision::pow;
    const MomentConstants mc = MomentConstants::for_base(b);
    return mc.c_b * m + Rational(1, 4) - make_rational(BigInt(1), 4 * pow(BigInt(b.value()), m));
}

// Exact mean and central moments of S(N) over all N < b^m, obtained by
// enumerating every index through s_of_n_digits.
struct BruteMoments {
    std::uint32_t base;
    unsigned m;
    Rational mean;
    std::vector<Rational> central; // central[k] = E (S - mean)^k, k = 0..order
};

inline BruteMoments brute_moments(Base b, unsigned m, unsigned order) {
    if (order < 2 || order % 2 != 0)
        throw ValidationError("moment order must be a positive even integer");
    const std::uint64_t count = pow_u64(b, m);
    if (count > caps::enumeration)
        throw ResourceLimitError("moment enumeration exceeds the configured cap");
    using boost::multiprecision::pow;
    const BigInt scale = pow(BigInt(b.value()), m);
    const BigInt denom = 2 * scale; // every S(N) = A_N / (2 b^m)
    std::vector<BigInt> nums;
    nums.reserve(static_cast<std::size_t>(count));
    BigInt sum = 0;
    for (std::uint64_t n = 0; n < count; ++n) {
        Rational s = s_of_n_digits(digits_of_padded(n, b, m));
        BigInt a = num(s) * (denom / den(s));
        sum += a;
        nums.push_back(std::move(a));
    }
    BruteMoments out{b.value(), m, make_rational(sum, denom * count), {}};
    out.central.assign(order + 1, Rational(0));
    out.central[0] = Rational(1);
    // S_N - mean = (A_N count - sum) / (2 b^m count)
    const BigInt dev_den = denom * count;
    std::vector<BigInt> power_sums(order + 1, BigInt(0));
    for (const BigInt& a : nums) {
        const BigInt dev = a * count - sum;
        BigInt p = 1;
        for (unsigned k = 1; k <= order; ++k) {
            p *= dev;
            power_sums[k] += p;
        }
    }
    for (unsigned k = 1; k <= order; ++k)
        out.central[k] = make_rational(power_sums[k], pow(dev_den, k) * count);
    return out;
}

// (m, Var_m - d(b) m) for m = 1..m_max. The residual is expected to settle
// geometrically, so successive differences of Var_m approach d(b) at rate
// roughly 1/b.
inline std::vector<std::pair<unsigned, Rational>> variance_drift(Base b, unsigned m_max) {
    const MomentConstants mc = MomentConstants::for_base(b);
    std::vector<std::pair<unsigned, Rational>> out;
    out.reserve(m_max);
    for (unsigned m = 1; m <= m_max; ++m) {
        BruteMoments bm = brute_moments(b, m, 2);
        out.emplace_back(m, bm.central[2] - mc.d_b * m);
    }
    return out;
}

} // namespace corput
