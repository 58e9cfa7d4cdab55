#pragma once

#include <cstdint>
#include <vector>

#include "corput/errors.hpp"
#include "corput/limits.hpp"
#include "corput/rational.hpp"

namespace corput {

// A validated radix b >= 2.
class Base {
public:
    explicit Base(std::uint32_t b) : value_(b) {
        if (b < 2) throw ValidationError("base must be >= 2");
    }
    std::uint32_t value() const { return value_; }
    friend bool operator==(Base a, Base b) { return a.value_ == b.value_; }

private:
    std::uint32_t value_;
};

inline std::uint64_t pow_u64(Base b, unsigned e) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (out > UINT64_MAX / b.value())
            throw ResourceLimitError("base power exceeds 64-bit range");
        out *= b.value();
    }
    return out;
}

// Number of base-b digits of n; 0 for n = 0.
inline unsigned digit_count(std::uint64_t n, Base b) {
    unsigned m = 0;
    while (n) { n /= b.value(); ++m; }
    return m;
}

// Base-b digits, least significant first: digits[i] = a_{i+1} where
// n = sum a_i b^{i-1}. Canonical form has no trailing zero digit; the padded
// flag marks vectors deliberately widened with zeros.
struct DigitVec {
    std::uint32_t base;
    std::vector<std::uint32_t> digits;
    bool padded = false;
};

inline DigitVec digits_of(std::uint64_t n, Base b) {
    DigitVec out{b.value(), {}, false};
    while (n) {
        out.digits.push_back(static_cast<std::uint32_t>(n % b.value()));
        n /= b.value();
    }
    return out;
}

// Fixed-width variant: exactly m slots, zero padded. Requires n < b^m.
inline DigitVec digits_of_padded(std::uint64_t n, Base b, unsigned m) {
    DigitVec out{b.value(), std::vector<std::uint32_t>(m, 0), true};
    for (unsigned i = 0; i < m; ++i) {
        out.digits[i] = static_cast<std::uint32_t>(n % b.value());
        n /= b.value();
    }
    if (n) throw ValidationError("index does not fit in the requested digit width");
    return out;
}

inline std::uint64_t value_of(const DigitVec& d) {
    std::uint64_t n = 0;
    for (std::size_t i = d.digits.size(); i-- > 0;) {
        if (n > (UINT64_MAX - d.digits[i]) / d.base)
            throw ResourceLimitError("digit vector exceeds 64-bit range");
        n = n * d.base + d.digits[i];
    }
    return n;
}

// r = sum a_i b^{m-i}, the radical inverse scaled by b^m.
inline std::uint64_t scaled_radical_inverse(std::uint64_t n, Base b, unsigned m) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < m; ++i) {
        r = r * b.value() + static_cast<std::uint64_t>(n % b.value());
        n /= b.value();
    }
    if (n) throw ValidationError("index does not fit in the requested digit width");
    return r;
}

// x_n = sum a_i / b^i in lowest terms. Denominator divides b^m.
inline Rational radical_inverse(std::uint64_t n, Base b) {
    const unsigned m = digit_count(n, b);
    const std::uint64_t scale = pow_u64(b, m);
    return make_rational(BigInt(scaled_radical_inverse(n, b, m)), BigInt(scale));
}

inline Rational radical_inverse(const DigitVec& d) {
    Base b(d.base);
    const unsigned m = static_cast<unsigned>(d.digits.size());
    BigInt r = 0;
    for (unsigned i = 0; i < m; ++i) r = r * d.base + d.digits[m - 1 - i];
    return make_rational(std::move(r), BigInt(pow_u64(b, m)));
}

// Walks x_start, x_{start+1}, ... in index order while maintaining the padded
// digit vector and the scaled inverse r_n incrementally. One advance() is an
// amortized O(1) carry chain, which is what makes the big scans affordable.
class RadicalInverseWalker {
public:
    RadicalInverseWalker(Base b, unsigned digit_slots, std::uint64_t start_n)
        : base_(b.value()),
          slots_(digit_slots),
          scale_(pow_u64(b, digit_slots)),
          digits_(digits_of_padded(start_n, b, digit_slots).digits),
          weight_(digit_slots, 1) {
        for (unsigned j = 1; j < slots_; ++j) weight_[j] = weight_[j - 1] * base_;
        // digit slot j carries a_{j+1}, whose scaled weight is b^{m-1-j}
        r_ = 0;
        for (unsigned j = 0; j < slots_; ++j) r_ += digits_[j] * weight_[slots_ - 1 - j];
    }

    std::uint64_t scaled() const { return r_; }
    std::uint64_t scale() const { return scale_; }
    unsigned digit_slots() const { return slots_; }
    const std::vector<std::uint32_t>& digits() const { return digits_; }

    void advance() {
        unsigned j = 0;
        while (j < slots_ && digits_[j] == base_ - 1) {
            r_ -= static_cast<std::uint64_t>(base_ - 1) * weight_[slots_ - 1 - j];
            digits_[j] = 0;
            ++j;
        }
        if (j == slots_) throw ResourceLimitError("walker advanced past its digit width");
        digits_[j] += 1;
        r_ += weight_[slots_ - 1 - j];
    }

private:
    std::uint32_t base_;
    unsigned slots_;
    std::uint64_t scale_;
    std::vector<std::uint32_t> digits_;
    std::vector<std::uint64_t> weight_;
    std::uint64_t r_ = 0;
};

// First N points of the base-b van der Corput sequence, exactly.
inline std::vector<Rational> sequence_prefix(std::uint64_t n_points, Base b) {
    if (n_points > caps::sequence_prefix)
        throw ResourceLimitError("sequence prefix exceeds the configured cap");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n_points));
    if (n_points == 0) return out;
    const unsigned m = digit_count(n_points - 1, b);
    RadicalInverseWalker w(b, m, 0);
    const BigInt scale(w.scale());
    for (std::uint64_t n = 0; n < n_points; ++n) {
        out.push_back(make_rational(BigInt(w.scaled()), scale));
        if (n + 1 < n_points) w.advance();
    }
    return out;
}

} // namespace corput
