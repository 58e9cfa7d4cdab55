#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "corput/detail/compensated.hpp"
#include "corput/discrepancy.hpp"
#include "corput/errors.hpp"
#include "corput/limits.hpp"
#include "corput/radix.hpp"

namespace corput {

namespace detail {
inline constexpr long double tau_ld = 6.283185307179586476925286766559005768L;
}

// Largest s with b^s | ell, for nonzero ell.
inline unsigned base_adic_valuation(std::int64_t ell, Base b) {
    if (ell == 0) throw ValidationError("ell must be nonzero");
    std::uint64_t u = ell < 0 ? 0ull - static_cast<std::uint64_t>(ell)
                              : static_cast<std::uint64_t>(ell);
    unsigned v = 0;
    while (u % b.value() == 0) {
        u /= b.value();
        ++v;
    }
    return v;
}

struct ExpSumResult {
    std::int64_t ell = 0;
    std::uint64_t n_points = 0;
    std::uint32_t base = 2;
    std::complex<double> value{0.0, 0.0};
    unsigned s_min = 0; // valuation of ell plus one
    double bound = 0.0; // b^{s_min}
};

// Walks the exponential sum sum_{n<N} e^{2 pi i ell x_n}, invoking
// visit(k, partial) after each prefix of k points. Phases are reduced
// exactly: ell * r mod scale in 128-bit integers, so the only floating
// error is one sin/cos evaluation per point plus compensated addition.
template <class Visitor>
void exp_sum_walk(std::int64_t ell, std::uint64_t n_points, Base b, Visitor&& visit) {
    if (ell == 0) throw ValidationError("ell must be nonzero");
    if (n_points == 0) throw ValidationError("exponential sum needs at least one point");
    if (n_points > caps::scan_exact)
        throw ResourceLimitError("exponential sum length exceeds the configured cap");
    const unsigned m = digit_count(n_points - 1, b);
    RadicalInverseWalker w(b, m, 0);
    const auto scale128 = static_cast<__int128>(w.scale());
    const long double scale_ld = static_cast<long double>(w.scale());
    const auto ell128 = static_cast<__int128>(ell);
    detail::CompensatedSum<long double> re, im;
    for (std::uint64_t n = 0; n < n_points; ++n) {
        __int128 t = (ell128 * static_cast<__int128>(w.scaled())) % scale128;
        if (t < 0) t += scale128;
        const long double angle = detail::tau_ld * (static_cast<long double>(t) / scale_ld);
        re.add(std::cos(angle));
        im.add(std::sin(angle));
        visit(n + 1, std::complex<double>(static_cast<double>(re.value()),
                                          static_cast<double>(im.value())));
        if (n + 1 < n_points) w.advance();
    }
}

inline ExpSumResult exp_sum(std::int64_t ell, std::uint64_t n_points, Base b) {
    ExpSumResult out;
    out.ell = ell;
    out.n_points = n_points;
    out.base = b.value();
    exp_sum_walk(ell, n_points, b,
                 [&](std::uint64_t, std::complex<double> v) { out.value = v; });
    out.s_min = base_adic_valuation(ell, b) + 1;
    out.bound = std::pow(double(b.value()), double(out.s_min));
    return out;
}

// True when |value| clears the b^{s_min} ceiling with margin to spare. The
// exact gap is at least 1 (the sum differs from a multiple of b^{s_min} by
// whole leftover terms), so the slack only guards float noise.
inline bool exp_sum_bound_holds(const ExpSumResult& r, double slack = 1e-9) {
    return std::abs(r.value) <= r.bound - slack;
}

// Fourier coefficient of the profile: integral of Delta_N(x) e^{-2 pi i ell x}.
// Computed literally segment by segment from the antiderivative of the linear
// piece, e^{-i w x} (i (c - N x)/w - N/w^2) with w = 2 pi ell, never through
// the closed form it is tested against.
inline std::complex<double> fourier_coeff_delta(const DiscrepancyProfile& profile,
                                                std::int64_t ell) {
    if (ell == 0) throw ValidationError("ell must be nonzero");
    using C = std::complex<long double>;
    const long double omega = detail::tau_ld * static_cast<long double>(ell);
    const std::uint64_t scale = profile.scale();
    const auto scale128 = static_cast<__int128>(scale);
    const long double scale_ld = static_cast<long double>(scale);
    const long double n_ld = static_cast<long double>(profile.point_count());
    const auto ell128 = static_cast<__int128>(ell);
    const auto& pts = profile.scaled_points();
    auto unit = [&](std::uint64_t r) { // e^{-i omega r/scale}, phase reduced exactly
        __int128 t = (ell128 * static_cast<__int128>(r)) % scale128;
        if (t < 0) t += scale128;
        const long double angle = -detail::tau_ld * (static_cast<long double>(t) / scale_ld);
        return C(std::cos(angle), std::sin(angle));
    };
    const C i_unit(0.0L, 1.0L);
    const long double inv_w2 = n_ld / (omega * omega);
    C total(0.0L, 0.0L);
    std::uint64_t prev = 0;
    C e_prev(1.0L, 0.0L);
    long double v_prev = 0.0L; // Delta value entering the segment; count 0 at x = 0
    for (std::size_t k = 0; k <= pts.size(); ++k) {
        const std::uint64_t node = (k == pts.size()) ? scale : pts[k];
        if (node != prev) {
            const C e_b = unit(node);
            const long double v_b =
                (static_cast<long double>(k) * scale_ld - n_ld * node) / scale_ld;
            const C f_a = e_prev * (i_unit * (v_prev / omega) - inv_w2);
            const C f_b = e_b * (i_unit * (v_b / omega) - inv_w2);
            total += f_b - f_a;
            e_prev = e_b;
            v_prev = v_b + 1.0L;
        } else {
            v_prev += 1.0L;
        }
        prev = node;
    }
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

struct FourierCheck {
    std::int64_t ell = 0;
    std::uint64_t n_points = 0;
    std::uint32_t base = 2;
    std::complex<double> lhs{0.0, 0.0}; // segment-wise integral
    std::complex<double> rhs{0.0, 0.0}; // conj(exp_sum) / (2 pi i ell)
    double residual = 0.0;
};

inline FourierCheck fourier_identity_check(std::uint64_t n_points, Base b, std::int64_t ell) {
    FourierCheck out;
    out.ell = ell;
    out.n_points = n_points;
    out.base = b.value();
    const DiscrepancyProfile profile = DiscrepancyProfile::build(n_points, b);
    out.lhs = fourier_coeff_delta(profile, ell);
    const std::complex<double> s = exp_sum(ell, n_points, b).value;
    out.rhs = std::conj(s) / (std::complex<double>(0.0, 1.0) *
                              static_cast<double>(detail::tau_ld * ell));
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

} // namespace corput
