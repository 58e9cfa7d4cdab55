#pragma once

#include <cmath>
#include <cstdint>

#include "corput/detail/compensated.hpp"
#include "corput/discrepancy.hpp"
#include "corput/errors.hpp"
#include "corput/limits.hpp"

namespace corput {

struct LpValue {
    double p;             // exponent; meaningless when is_sup
    bool is_sup;
    double value;
    bool exact_integrand; // integral taken on the exact rational path
};

namespace detail {

inline long double ipow_ld(long double x, unsigned e) {
    long double out = 1.0L;
    while (e) {
        if (e & 1) out *= x;
        x *= x;
        e >>= 1;
    }
    return out;
}

// Integral over [0,1] of |count(x) - N x|^p for the step structure described
// by sorted scaled points over a common denominator. Per segment the
// antiderivative of the linear piece is -v |v|^p / (N (p+1)); terms are all
// nonnegative (the profile never goes below zero for this sequence), so plain
// compensated accumulation in long double keeps the relative error near
// machine level. Shared by the profile norms and the incremental Lp scans.
inline long double lp_integral_real_sorted(const std::uint64_t* pts, std::size_t n_pts,
                                           std::uint64_t n_points, std::uint64_t scale,
                                           double p) {
    const bool integer_p = p == std::floor(p) && p <= double(caps::max_power);
    const unsigned pe = integer_p ? static_cast<unsigned>(p) : 0;
    auto v_abs_pow = [&](long double v) { // v |v|^p
        const long double a = std::fabs(v);
        return integer_p ? v * ipow_ld(a, pe) : v * std::pow(a, static_cast<long double>(p));
    };
    const long double scale_ld = static_cast<long double>(scale);
    const long double n_ld = static_cast<long double>(n_points);
    CompensatedSum<long double> total;
    std::uint64_t prev = 0;
    long double v_prev = 0.0L; // value at the running segment start; count 0 at x = 0
    for (std::size_t k = 0; k <= n_pts; ++k) {
        const std::uint64_t node = (k == n_pts) ? scale : pts[k];
        if (node != prev) {
            const long double v_b =
                (static_cast<long double>(k) * scale_ld - n_ld * node) / scale_ld;
            total.add((v_abs_pow(v_prev) - v_abs_pow(v_b)) / (n_ld * (p + 1.0)));
            v_prev = v_b + 1.0L;
        } else {
            v_prev += 1.0L;
        }
        prev = node;
    }
    return total.value();
}

} // namespace detail

// Exact rational integral of Delta^p. Valid for every integer p >= 1 because
// Delta_N >= 0 pointwise, so |Delta|^p = Delta^p.
inline Rational lp_integral_exact(const DiscrepancyProfile& profile, unsigned p) {
    return profile.integral_power(Rational(0), p);
}

inline LpValue lp_norm_exact(const DiscrepancyProfile& profile, unsigned p) {
    if (p < 1) throw ValidationError("p must be >= 1");
    if (p > caps::max_power) throw ResourceLimitError("p exceeds the configured cap");
    const double integral = to_double(lp_integral_exact(profile, p));
    return {double(p), false, std::pow(integral, 1.0 / double(p)), true};
}

inline LpValue lp_norm_real(const DiscrepancyProfile& profile, double p) {
    if (!(p >= 1.0)) throw ValidationError("p must be >= 1");
    if (p > double(caps::max_power)) throw ResourceLimitError("p exceeds the configured cap");
    const long double integral = detail::lp_integral_real_sorted(
        profile.scaled_points().data(), profile.scaled_points().size(), profile.point_count(),
        profile.scale(), p);
    const double value = static_cast<double>(std::pow(integral, 1.0L / static_cast<long double>(p)));
    return {p, false, value, false};
}

// Integer p dispatches to the exact-integrand path, everything else to the
// closed-form real path. Relative error of the real path stays under 1e-10.
inline LpValue lp_norm(const DiscrepancyProfile& profile, double p) {
    if (!(p >= 1.0)) throw ValidationError("p must be >= 1");
    if (p == std::floor(p) && p <= double(caps::max_power))
        return lp_norm_exact(profile, static_cast<unsigned>(p));
    return lp_norm_real(profile, p);
}

// Essential supremum: the maximum over one-sided limits at the jumps, which
// is what the (b/4) log_b N + b envelope bounds.
inline double sup_norm(const DiscrepancyProfile& profile) {
    return to_double(profile.sup_exact());
}

inline LpValue sup_norm_value(const DiscrepancyProfile& profile) {
    return {0.0, true, sup_norm(profile), true};
}

struct LpSBoundReport {
    unsigned p;
    Rational difference; // integral Delta^p - S(N)^p, exact
    double ratio;        // difference / (b^p (log_b N + 1)^{p-1})
};

// The gap between the p-th integral and S(N)^p, normalized by the
// b^p (log_b N + 1)^{p-1} envelope. The implied constant is unspecified, so
// the ratio is reported for trend analysis rather than asserted against a
// fixed threshold.
inline LpSBoundReport lp_minus_s_bound_report(const DiscrepancyProfile& profile, unsigned p) {
    if (p < 2 || p % 2 != 0) throw ValidationError("p must be an even integer >= 2");
    const Rational diff =
        lp_integral_exact(profile, p) - pow_rational(profile.integral(), p);
    const double logb = std::log(double(profile.point_count())) /
                        std::log(double(profile.base().value()));
    const double envelope = std::pow(double(profile.base().value()), double(p)) *
                            std::pow(logb + 1.0, double(p) - 1.0);
    return {p, diff, to_double(diff) / envelope};
}

} // namespace corput
