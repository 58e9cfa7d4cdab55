#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "corput/detail/compensated.hpp"
#include "corput/digit_formula.hpp"
#include "corput/errors.hpp"
#include "corput/integrand.hpp"
#include "corput/limits.hpp"
#include "corput/radix.hpp"

namespace corput {

struct QmcDecomposition {
    std::string f_id;
    std::uint64_t n_points = 0;
    std::uint32_t base = 2;
    double sum_f = 0.0;       // sum f(x_n), n < N
    double mean_term = 0.0;   // N integral f
    double jump_term = 0.0;   // (f(1) - f(0)) S(N)
    double remainder = 0.0;   // sum_f - mean_term + jump_term
    double bound = 0.0;       // (b/3) ||f''||_1
    bool satisfied = false;   // |remainder| within the bound (float slack only)
    bool exact = false;       // polynomial path: rational fields below are live
    Rational sum_f_exact{0};
    Rational remainder_exact{0};
};

// Splits the QMC error sum f(x_n) - N integral f into the boundary jump term
// (f(1) - f(0)) S(N) and a remainder bounded by (b/3) ||f''||_1 independently
// of N. Polynomials run fully in rationals; other integrands accumulate in
// compensated long double.
inline QmcDecomposition qmc_decompose(const Integrand& f, std::uint64_t n_points, Base b) {
    if (n_points == 0) throw ValidationError("decomposition needs at least one point");
    if (n_points > caps::sequence_prefix)
        throw ResourceLimitError("point count exceeds the configured cap");
    QmcDecomposition out;
    out.f_id = f.id();
    out.n_points = n_points;
    out.base = b.value();
    out.exact = f.exact();
    const unsigned m = digit_count(n_points - 1, b);
    RadicalInverseWalker w(b, m, 0);
    const std::uint64_t scale = w.scale();
    const Rational s_n = s_of_n_digits(n_points, b);
    out.bound = (double(b.value()) / 3.0) * f.second_derivative_l1();
    if (out.exact) {
        Rational sum(0);
        for (std::uint64_t n = 0; n < n_points; ++n) {
            sum += f.eval_exact(make_rational(BigInt(w.scaled()), BigInt(scale)));
            if (n + 1 < n_points) w.advance();
        }
        out.sum_f_exact = sum;
        const Rational mean = BigInt(n_points) * f.integral01_exact();
        const Rational jump = (f.at1_exact() - f.at0_exact()) * s_n;
        out.remainder_exact = sum - mean + jump;
        out.sum_f = to_double(sum);
        out.mean_term = to_double(mean);
        out.jump_term = to_double(jump);
        out.remainder = to_double(out.remainder_exact);
    } else {
        detail::CompensatedSum<long double> sum;
        const long double scale_ld = static_cast<long double>(scale);
        for (std::uint64_t n = 0; n < n_points; ++n) {
            sum.add(f(static_cast<double>(static_cast<long double>(w.scaled()) / scale_ld)));
            if (n + 1 < n_points) w.advance();
        }
        out.sum_f = static_cast<double>(sum.value());
        out.mean_term = double(n_points) * f.integral01();
        out.jump_term = (f.at1() - f.at0()) * to_double(s_n);
        out.remainder = static_cast<double>(
            sum.value() - static_cast<long double>(out.mean_term) +
            static_cast<long double>(out.jump_term));
    }
    out.satisfied = std::fabs(out.remainder) <= out.bound + 1e-9;
    return out;
}

// One pass over N = 1..n_max calling visit(N, remainder). The running sum of
// f and the exact S accumulator advance one point per step, so the whole
// sweep is linear in n_max.
template <class Visitor>
void qmc_scan(const Integrand& f, std::uint64_t n_max, Base b, Visitor&& visit) {
    if (n_max == 0) throw ValidationError("scan needs at least one point");
    if (n_max > caps::sequence_prefix)
        throw ResourceLimitError("point count exceeds the configured cap");
    const unsigned m = digit_count(n_max - 1, b);
    RadicalInverseWalker w(b, m, 0);
    const std::uint64_t scale = w.scale();
    const long double scale_ld = static_cast<long double>(scale);
    const long double mean_unit = static_cast<long double>(f.integral01());
    const long double jump_scale = static_cast<long double>(f.at1() - f.at0());
    detail::CompensatedSum<long double> sum_f;
    detail::CompensatedSum<long double> s_acc; // S(N) in units of 1/(2 scale)
    for (std::uint64_t n = 0; n < n_max; ++n) {
        const std::uint64_t r = w.scaled();
        sum_f.add(f(static_cast<double>(static_cast<long double>(r) / scale_ld)));
        s_acc.add(static_cast<long double>(scale) - 2.0L * static_cast<long double>(r));
        const long double s_val = s_acc.value() / (2.0L * scale_ld);
        const long double remainder =
            sum_f.value() - mean_unit * static_cast<long double>(n + 1) + jump_scale * s_val;
        visit(n + 1, static_cast<double>(remainder));
        if (n + 1 < n_max) w.advance();
    }
}

struct KoksmaReport {
    std::uint64_t n_points = 0;
    std::uint32_t base = 2;
    double gap = 0.0;      // |sum f(x_n) - N integral f|
    double envelope = 0.0; // ((b/4) log_b N + b) V(f)
    bool satisfied = false;
    bool exact = false;
    Rational gap_exact{0};
};

// Koksma-style check: the integration error never exceeds the sup-discrepancy
// envelope times the total variation of f.
inline KoksmaReport koksma_gap(const Integrand& f, std::uint64_t n_points, Base b) {
    const QmcDecomposition d = qmc_decompose(f, n_points, b);
    KoksmaReport out;
    out.n_points = n_points;
    out.base = b.value();
    out.exact = d.exact;
    if (d.exact) {
        out.gap_exact = abs(d.sum_f_exact - BigInt(n_points) * f.integral01_exact());
        out.gap = to_double(out.gap_exact);
    } else {
        out.gap = std::fabs(d.sum_f - d.mean_term);
    }
    const double logb = std::log(double(n_points)) / std::log(double(b.value()));
    out.envelope = ((double(b.value()) / 4.0) * logb + double(b.value())) * f.total_variation();
    out.satisfied = out.gap <= out.envelope + 1e-9;
    return out;
}

} // namespace corput
