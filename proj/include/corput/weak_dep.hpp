#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "corput/digit_formula.hpp"
#include "corput/errors.hpp"
#include "corput/limits.hpp"
#include "corput/radix.hpp"
#include "corput/rational.hpp"

namespace corput {

// q = (2 / (1 - e^{-c}))^{a + 1/2}
inline double moment_bound_q(unsigned a, double c) {
    if (a < 2) throw ValidationError("weak-dependence arity must be >= 2");
    if (!(c > 0)) throw ValidationError("decay rate must be positive");
    return std::pow(2.0 / (1.0 - std::exp(-c)), a + 0.5);
}

// g(x) = sum_k x^{2ak} / (2ak)!, summed until a term drops below
// 1e-16 of the running partial sum. For a = 2 this equals
// (e^x + e^{-x})/4 + cos(x)/2.
inline double moment_series_g(unsigned a, double x) {
    if (a < 2) throw ValidationError("weak-dependence arity must be >= 2");
    if (x < 0) throw ValidationError("g is defined for x >= 0");
    double partial = 1.0;
    double term = 1.0;
    double fact_index = 0.0;
    while (true) {
        for (unsigned i = 0; i < 2 * a; ++i) {
            fact_index += 1.0;
            term *= x / fact_index;
        }
        if (term < 1e-16 * partial) break;
        partial += term;
    }
    return partial;
}

// A family of centered functions of digit subsets with exponentially decaying
// uniform bound: E f_A = 0 and |f_A| <= e^{-c diam A}. Both conditions are
// checked exhaustively at construction (digit alphabets are finite, so the
// invariants are decidable rather than sampled). The empty subset is implicit
// with f = 0.
class WeakDepFamily {
public:
    using Term = std::function<Rational(const std::vector<std::uint32_t>&)>;
    struct Entry {
        std::vector<unsigned> indices; // 1-based digit positions, ascending
        Term f;
    };

    WeakDepFamily(Base b, unsigned m, unsigned arity, double decay_c, std::vector<Entry> entries)
        : base_(b.value()), m_(m), arity_(arity), decay_(decay_c), entries_(std::move(entries)) {
        if (m_ < 2) throw ValidationError("family width m must be >= 2");
        if (arity_ < 2) throw ValidationError("family arity must be >= 2");
        if (!(decay_ > 0)) throw ValidationError("decay rate must be positive");
        for (const Entry& e : entries_) validate_entry(e);
    }

    std::uint32_t base() const { return base_; }
    unsigned m() const { return m_; }
    unsigned arity() const { return arity_; }
    double decay() const { return decay_; }
    const std::vector<Entry>& entries() const { return entries_; }

    // sum over all subsets of f_A evaluated at the digits of one index;
    // full_digits must be padded to width m, least significant first.
    Rational sum_terms(const std::vector<std::uint32_t>& full_digits) const {
        if (full_digits.size() != m_)
            throw ValidationError("digit vector width does not match the family");
        Rational total(0);
        std::vector<std::uint32_t> slot;
        for (const Entry& e : entries_) {
            slot.clear();
            for (unsigned idx : e.indices) slot.push_back(full_digits[idx - 1]);
            total += e.f(slot);
        }
        return total;
    }

private:
    void validate_entry(const Entry& e) const {
        if (e.indices.empty() || e.indices.size() > arity_)
            throw InvariantError("family subset size must be in [1, arity]");
        for (std::size_t i = 0; i < e.indices.size(); ++i) {
            if (e.indices[i] < 1 || e.indices[i] > m_)
                throw InvariantError("family subset index out of range");
            if (i && e.indices[i] <= e.indices[i - 1])
                throw InvariantError("family subset indices must be strictly increasing");
        }
        const unsigned diam = e.indices.back() - e.indices.front();
        const double cap = std::exp(-decay_ * diam) + 1e-12;
        const std::uint64_t assignments = pow_u64(Base(base_), static_cast<unsigned>(e.indices.size()));
        Rational mean(0);
        std::vector<std::uint32_t> values(e.indices.size(), 0);
        for (std::uint64_t it = 0; it < assignments; ++it) {
            const Rational v = e.f(values);
            mean += v;
            if (std::abs(to_double(v)) > cap)
                throw InvariantError("family term exceeds its e^{-c diam} bound");
            for (std::size_t d = 0; d < values.size(); ++d) {
                if (++values[d] < base_) break;
                values[d] = 0;
            }
        }
        if (mean != 0) throw InvariantError("family term is not centered");
    }

    std::uint32_t base_;
    unsigned m_;
    unsigned arity_;
    double decay_;
    std::vector<Entry> entries_;
};

struct MomentBoundReport {
    unsigned k;
    Rational moment;     // exact E (sum_A f_A)^{2k}
    double moment_value; // the same, rounded
    double bound;        // q^{2k} (2ak)! m^k
    bool satisfied;
};

// Exhaustive 2k-th moment of sum_A f_A over uniform digits, against the
// q^{2k} (2ak)! m^k bound. k is limited to {1, 2}: the enumeration is
// exponential in m and the suite never needs more.
inline MomentBoundReport check_moment_bound(const WeakDepFamily& family, Base b, unsigned k) {
    if (b.value() != family.base())
        throw ValidationError("base does not match the family");
    if (k < 1 || k > 2) throw ValidationError("moment index k must be 1 or 2");
    const std::uint64_t count = pow_u64(b, family.m());
    if (count > caps::enumeration)
        throw ResourceLimitError("moment enumeration exceeds the configured cap");
    Rational acc(0);
    std::vector<std::uint32_t> digits(family.m(), 0);
    for (std::uint64_t it = 0; it < count; ++it) {
        acc += pow_rational(family.sum_terms(digits), 2 * k);
        for (std::size_t d = 0; d < digits.size(); ++d) {
            if (++digits[d] < family.base()) break;
            digits[d] = 0;
        }
    }
    MomentBoundReport rep{k, acc / count, 0.0, 0.0, false};
    rep.moment_value = to_double(rep.moment);
    const double q = moment_bound_q(family.arity(), family.decay());
    double fact = 1.0;
    for (unsigned i = 2; i <= 2 * family.arity() * k; ++i) fact *= i;
    rep.bound = std::pow(q, 2.0 * k) * fact * std::pow(double(family.m()), double(k));
    rep.satisfied = rep.moment_value <= rep.bound;
    return rep;
}

// The family behind the centered digit expansion of S(N): singletons carry
// the per-digit quadratic, pairs carry the cross term scaled by b^{-(j-i)},
// arity 2 and decay log 2 for every base. The scaling constant 3b/4 makes
// S(N) - E S(N) = (3/4) b sum_A f_A(a_A) hold exactly.
inline WeakDepFamily standard_family_for_s(Base b, unsigned m) {
    if (m < 2) throw ValidationError("standard family needs m >= 2");
    const BigInt bb(b.value());
    const Rational eh = make_rational((bb - 1) * (bb + 4), 12 * bb);
    const Rational exy = make_rational((bb - 1) * (bb - 1), BigInt(4));
    const Rational single_scale = make_rational(BigInt(4), 3 * bb);
    std::vector<WeakDepFamily::Entry> entries;
    for (unsigned i = 1; i <= m; ++i) {
        entries.push_back({{i}, [bb, eh, single_scale](const std::vector<std::uint32_t>& v) {
            const BigInt x(v[0]);
            const Rational h = make_rational((bb + 1) * x - x * x, 2 * bb);
            return Rational(single_scale * (h - eh));
        }});
    }
    for (unsigned i = 1; i <= m; ++i) {
        for (unsigned j = i + 1; j <= m; ++j) {
            const Rational pair_scale =
                make_rational(BigInt(-4), 3 * bb * bb * boost::multiprecision::pow(bb, j - i));
            entries.push_back({{i, j}, [exy, pair_scale](const std::vector<std::uint32_t>& v) {
                const BigInt xy = BigInt(v[0]) * v[1];
                return Rational(pair_scale * (xy - exy));
            }});
        }
    }
    return WeakDepFamily(b, m, 2, std::log(2.0), std::move(entries));
}

// Exact check of S(N) - E S = (3/4) b sum f_A over every N < b^m.
inline bool standard_family_identity_holds(const WeakDepFamily& family, Base b) {
    if (b.value() != family.base())
        throw ValidationError("base does not match the family");
    const unsigned m = family.m();
    const std::uint64_t count = pow_u64(b, m);
    if (count > caps::enumeration)
        throw ResourceLimitError("identity enumeration exceeds the configured cap");
    const Rational mean = expected_s(b, m);
    const Rational scale = make_rational(3 * BigInt(b.value()), BigInt(4));
    for (std::uint64_t n = 0; n < count; ++n) {
        const DigitVec d = digits_of_padded(n, b, m);
        if (s_of_n_digits(d) - mean != scale * family.sum_terms(d.digits)) return false;
    }
    return true;
}

} // namespace corput
