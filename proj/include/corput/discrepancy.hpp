#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "corput/errors.hpp"
#include "corput/limits.hpp"
#include "corput/radix.hpp"
#include "corput/rational.hpp"

namespace corput {

// Exact piecewise description of Delta_N(x) = #{n < N : x_n < x} - N x for
// the first N points of the base-b sequence. All breakpoints share the
// denominator b^m with m the digit width of N-1, so every quantity below is
// integer arithmetic over that common scale.
//
// Delta_N is left-continuous in this counting convention (the count uses a
// strict x_n < x), drops with slope -N between breakpoints and jumps by +1 at
// each point. sup() therefore reports the essential supremum, i.e. it
// includes the one-sided limits from the right at the jump locations; those
// limits are what the (b/4) log_b N + b envelope controls.
class DiscrepancyProfile {
public:
    static DiscrepancyProfile build(std::uint64_t n_points, Base b) {
        if (n_points == 0) throw ValidationError("profile needs at least one point");
        if (n_points > caps::profile_points)
            throw ResourceLimitError("profile size exceeds the configured cap");
        DiscrepancyProfile p(b);
        p.n_ = n_points;
        p.m_ = digit_count(n_points - 1, b);
        p.scale_ = pow_u64(b, p.m_);
        p.points_.reserve(static_cast<std::size_t>(n_points));
        RadicalInverseWalker w(b, p.m_, 0);
        for (std::uint64_t n = 0; n < n_points; ++n) {
            p.points_.push_back(w.scaled());
            if (n + 1 < n_points) w.advance();
        }
        std::sort(p.points_.begin(), p.points_.end());
        return p;
    }

    std::uint64_t point_count() const { return n_; }
    Base base() const { return base_; }
    unsigned scale_digits() const { return m_; }
    std::uint64_t scale() const { return scale_; }
    const std::vector<std::uint64_t>& scaled_points() const { return points_; }

    Rational breakpoint(std::size_t j) const {
        return make_rational(BigInt(points_.at(j)), BigInt(scale_));
    }

    // #{n < N : x_n < x}, strict comparison.
    std::uint64_t count_below(const Rational& x) const {
        const BigInt p = num(x) * scale_;
        const BigInt& q = den(x);
        auto it = std::partition_point(points_.begin(), points_.end(),
                                       [&](std::uint64_t r) { return BigInt(r) * q < p; });
        return static_cast<std::uint64_t>(it - points_.begin());
    }

    Rational eval_delta(const Rational& x) const {
        if (x < 0 || x > 1) throw ValidationError("eval point must lie in [0,1]");
        const std::uint64_t c = count_below(x);
        return make_rational(BigInt(c) * den(x) - BigInt(n_) * num(x), den(x));
    }

    // One-sided values at breakpoint j, as integers over scale().
    std::int64_t left_value_scaled(std::size_t j) const {
        return static_cast<std::int64_t>(j) * static_cast<std::int64_t>(scale_) -
               static_cast<std::int64_t>(n_) * static_cast<std::int64_t>(points_[j]);
    }
    std::int64_t right_value_scaled(std::size_t j) const {
        return left_value_scaled(j) + static_cast<std::int64_t>(scale_);
    }

    Rational sup_exact() const {
        std::int64_t best = 0; // Delta(0) = 0
        for (std::size_t j = 0; j < points_.size(); ++j)
            best = std::max(best, right_value_scaled(j));
        return make_rational(BigInt(best), BigInt(scale_));
    }

    Rational min_one_sided() const {
        std::int64_t worst = 0; // Delta(1) = 0
        for (std::size_t j = 0; j < points_.size(); ++j)
            worst = std::min(worst, left_value_scaled(j));
        return make_rational(BigInt(worst), BigInt(scale_));
    }

    double sup() const { return to_double(sup_exact()); }

    // Exact integral of (Delta_N(x) - shift)^power over [0,1], power >= 1.
    // Between consecutive breakpoints the integrand is a polynomial in x, so
    // each segment contributes (u_a^{p+1} - u_b^{p+1}) / (W^{p+1} N (p+1))
    // where u = (count - shift - N x) W is integer over W = den(shift) b^m.
    Rational integral_power(const Rational& shift, unsigned power) const {
        if (power < 1) throw ValidationError("integral power must be >= 1");
        if (power > caps::max_power)
            throw ResourceLimitError("integral power exceeds the configured cap");
        using boost::multiprecision::pow;
        const BigInt sd = den(shift);
        const BigInt scale_big(scale_);
        const BigInt w = sd * scale_big;
        const BigInt shift_scaled = num(shift) * scale_big;
        const BigInt n_sd = BigInt(n_) * sd;
        BigInt total = 0;
        std::uint64_t prev = 0;
        // u at (count, node r); fresh value once per node, +w when the count
        // steps across the node.
        BigInt u_prev = -shift_scaled; // count 0 at r = 0
        for (std::size_t k = 0; k <= points_.size(); ++k) {
            const std::uint64_t node = (k == points_.size()) ? scale_ : points_[k];
            if (node != prev) {
                const BigInt u_b = BigInt(k) * w - shift_scaled - n_sd * node;
                total += pow(u_prev, power + 1) - pow(u_b, power + 1);
                u_prev = u_b + w;
            } else {
                u_prev += w;
            }
            prev = node;
        }
        return make_rational(std::move(total),
                             pow(w, power + 1) * n_ * (power + 1));
    }

    // Exact integral of Delta_N over [0,1]; equals S(N).
    Rational integral() const { return integral_power(Rational(0), 1); }

private:
    explicit DiscrepancyProfile(Base b) : base_(b) {}

    Base base_;
    std::uint64_t n_ = 0;
    unsigned m_ = 0;
    std::uint64_t scale_ = 1;
    std::vector<std::uint64_t> points_;
};

inline DiscrepancyProfile build_profile(std::uint64_t n_points, Base b) {
    return DiscrepancyProfile::build(n_points, b);
}

inline Rational eval_delta(const DiscrepancyProfile& p, const Rational& x) {
    return p.eval_delta(x);
}

inline Rational integral_delta(const DiscrepancyProfile& p) { return p.integral(); }

// Exact integral of (Delta_N - shift)^power, the object behind the L^2
// remainder inequality and the even-p norm path.
inline Rational integral_delta_against_poly(const DiscrepancyProfile& p,
                                            const Rational& shift, unsigned power) {
    return p.integral_power(shift, power);
}

// S(N) = sum_{n<N} (1/2 - x_n) by direct summation of the points, kept exact
// through a single integer accumulator over the common denominator 2 b^m.
inline Rational s_of_n_direct(std::uint64_t n_points, Base b) {
    if (n_points == 0) return Rational(0);
    if (n_points > caps::scan_exact)
        throw ResourceLimitError("direct summation exceeds the configured cap");
    const unsigned m = digit_count(n_points - 1, b);
    RadicalInverseWalker w(b, m, 0);
    const std::uint64_t scale = w.scale();
    BigInt accum = 0;
    for (std::uint64_t n = 0; n < n_points; ++n) {
        accum += BigInt(scale) - 2 * BigInt(w.scaled());
        if (n + 1 < n_points) w.advance();
    }
    return make_rational(std::move(accum), 2 * BigInt(scale));
}

} // namespace corput
