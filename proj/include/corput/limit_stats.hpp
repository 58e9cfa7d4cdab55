#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include "corput/detail/compensated.hpp"
#include "corput/digit_formula.hpp"
#include "corput/errors.hpp"
#include "corput/limits.hpp"
#include "corput/normal.hpp"
#include "corput/norms.hpp"
#include "corput/radix.hpp"

namespace corput {

enum class ScanMode { exact, fast };

struct ScanRecord {
    std::uint64_t n = 0;
    double s_value = 0.0;
    double normalized = std::numeric_limits<double>::quiet_NaN(); // NaN below n = 2
};

struct CltStatistic {
    enum class Kind { s, lp };
    Kind kind = Kind::s;
    double p = 2.0; // exponent when kind == lp
};

struct CltReport {
    std::uint64_t m_total = 0;
    std::uint32_t base = 2;
    std::vector<double> lambda_grid;
    std::vector<double> empirical;  // fraction of normalized values < lambda
    std::vector<double> phi_values; // standard normal CDF on the grid
    double ks_distance = 0.0;
    double theory_envelope = 0.0;   // (ln log_b M / log_b M)^{1/4}
};

struct TailReport {
    std::uint64_t m_total = 0;
    std::uint32_t base = 2;
    double lambda = 0.0;
    double threshold = 0.0;
    double empirical_fraction = 0.0;
    double bound = 0.0;
    bool satisfied = false;
    double max_abs_deviation = 0.0; // diagnostic, not serialized
};

namespace detail {

struct ChunkRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
};

// Splits [0, total) into at most `threads` ranges whose boundaries are
// multiples of `align`. Alignment matters: fast scans reseed on aligned
// block boundaries, so aligned chunks make every row's value independent of
// the thread count.
inline std::vector<ChunkRange> partition_range(std::uint64_t total, unsigned threads,
                                               std::uint64_t align = 1) {
    std::uint64_t t = threads ? threads : 1;
    const std::uint64_t n_blocks = align ? (total + align - 1) / align : total;
    if (t > n_blocks) t = n_blocks ? n_blocks : 1;
    std::vector<ChunkRange> out;
    std::uint64_t begin = 0;
    for (std::uint64_t i = 0; i < t; ++i) {
        const std::uint64_t blocks = n_blocks / t + (i < n_blocks % t ? 1 : 0);
        const std::uint64_t end = std::min(total, begin + blocks * align);
        out.push_back({begin, end});
        begin = end;
    }
    return out;
}

template <class Fn>
void run_chunks(const std::vector<ChunkRange>& chunks, Fn&& fn) {
    if (chunks.size() == 1) {
        fn(std::size_t(0), chunks[0]);
        return;
    }
    std::vector<std::exception_ptr> errors(chunks.size());
    std::vector<std::thread> pool;
    pool.reserve(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i)
        pool.emplace_back([&, i] {
            try {
                fn(i, chunks[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// 2 b^m S(n0): the scaled running sum is always integral because the
// denominator of S(n0) divides 2 b^m.
inline BigInt exact_accum_at(std::uint64_t n0, Base b, std::uint64_t scale) {
    const Rational s = s_of_n_digits(n0, b);
    const BigInt two_scale = BigInt(scale) << 1;
    if (two_scale % den(s) != 0) throw InvariantError("running sum is not integral");
    return num(s) * (two_scale / den(s));
}

// Walks rows n in [begin, end), calling row(n, accum) where accum is the
// exact integer 2 b^m S(n).
template <class Row>
void exact_chunk(std::uint64_t begin, std::uint64_t end, Base b, unsigned m, Row&& row) {
    if (begin >= end) return;
    RadicalInverseWalker w(b, m, begin);
    const std::uint64_t scale = w.scale();
    BigInt acc = exact_accum_at(begin, b, scale);
    for (std::uint64_t n = begin; n < end; ++n) {
        row(n, acc);
        acc += BigInt(scale) - (BigInt(w.scaled()) << 1);
        if (n + 1 < end) w.advance();
    }
}

// Rows per reseed of the fast accumulator. Every block boundary restarts
// from the exact digit-formula value, so rounding never crosses a block and
// each row's long double value is a pure function of n.
inline constexpr std::uint64_t fast_reseed_block = 4096;

// Walks rows n in [begin, end), calling row(n, s) with s = S(n) in long
// double. Error per row stays below a few units in 2^-63 (documented bound
// for the fast mode is n * 2^-50, held with orders of magnitude to spare).
template <class Row>
void fast_chunk(std::uint64_t begin, std::uint64_t end, Base b, unsigned m, Row&& row) {
    if (begin >= end) return;
    RadicalInverseWalker w(b, m, begin);
    const std::uint64_t scale = w.scale();
    const long double scale_ld = static_cast<long double>(scale);
    CompensatedSum<long double> acc;
    auto reseed = [&](std::uint64_t n0) {
        const Rational s0 = s_of_n_digits(n0, b);
        acc = CompensatedSum<long double>{};
        acc.add(num(s0).convert_to<long double>() / den(s0).convert_to<long double>());
    };
    reseed(begin);
    for (std::uint64_t n = begin; n < end; ++n) {
        if (n != begin && n % fast_reseed_block == 0) reseed(n);
        row(n, acc.value());
        acc.add(0.5L - static_cast<long double>(w.scaled()) / scale_ld);
        if (n + 1 < end) w.advance();
    }
}

inline void validate_scan(std::uint64_t m_total, Base b, ScanMode mode) {
    if (m_total <= b.value()) throw ValidationError("M must exceed the base");
    const std::uint64_t cap = mode == ScanMode::exact ? caps::scan_exact : caps::scan_fast;
    if (m_total > cap) throw ResourceLimitError("scan length exceeds the configured cap");
}

} // namespace corput::detail

inline double normalized_deviation(double s_value, std::uint64_t n, double c_b, double d_b,
                                   double ln_b) {
    const double logb = std::log(double(n)) / ln_b;
    return (s_value - c_b * logb) / std::sqrt(d_b * logb);
}

// Materializes S(n) for n in [0, M). Intended for moderate M; the streaming
// serializer and the statistics scans below avoid the allocation.
inline std::vector<ScanRecord> scan_s_collect(std::uint64_t m_total, Base b, ScanMode mode,
                                              unsigned threads = 1) {
    detail::validate_scan(m_total, b, mode);
    if (m_total > caps::sequence_prefix)
        throw ResourceLimitError("collected scan exceeds the configured cap");
    const unsigned m = digit_count(m_total - 1, b);
    const MomentConstants mc = MomentConstants::for_base(b);
    const double c_b = to_double(mc.c_b);
    const double d_b = to_double(mc.d_b);
    const double ln_b = std::log(double(b.value()));
    std::vector<ScanRecord> out(m_total);
    const auto chunks =
        detail::partition_range(m_total, threads, detail::fast_reseed_block);
    const std::uint64_t scale = pow_u64(b, m);
    const long double two_scale = 2.0L * static_cast<long double>(scale);
    detail::run_chunks(chunks, [&](std::size_t, detail::ChunkRange r) {
        auto emit = [&](std::uint64_t n, double s) {
            out[n].n = n;
            out[n].s_value = s;
            if (n >= 2) out[n].normalized = normalized_deviation(s, n, c_b, d_b, ln_b);
        };
        if (mode == ScanMode::exact)
            detail::exact_chunk(r.begin, r.end, b, m, [&](std::uint64_t n, const BigInt& a) {
                emit(n, static_cast<double>(a.convert_to<long double>() / two_scale));
            });
        else
            detail::fast_chunk(r.begin, r.end, b, m, [&](std::uint64_t n, long double s) {
                emit(n, static_cast<double>(s));
            });
    });
    return out;
}

// Exact S(n) for n in [0, M) as rationals. Test oracle and small-M helper.
inline std::vector<Rational> scan_s_exact_values(std::uint64_t m_total, Base b) {
    detail::validate_scan(m_total, b, ScanMode::exact);
    if (m_total > caps::sequence_prefix)
        throw ResourceLimitError("collected scan exceeds the configured cap");
    const unsigned m = digit_count(m_total - 1, b);
    const std::uint64_t scale = pow_u64(b, m);
    const BigInt two_scale = BigInt(scale) << 1;
    std::vector<Rational> out;
    out.reserve(m_total);
    detail::exact_chunk(0, m_total, b, m, [&](std::uint64_t, const BigInt& a) {
        out.push_back(make_rational(a, two_scale));
    });
    return out;
}

// The grid the CLI defaults to: -4 to 4 in quarter steps, built from
// integers so the endpoints come out exact.
inline std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    grid.reserve(33);
    for (int i = -16; i <= 16; ++i) grid.push_back(0.25 * i);
    return grid;
}

// Empirical CDF of the normalized deviation (S(N) - c(b) log_b N) /
// sqrt(d(b) log_b N) over 2 <= N < M against the standard normal, on a
// sorted lambda grid. N in {0, 1} is excluded (log_b N vanishes), so the
// denominator is M - 2.
inline CltReport clt_scan(std::uint64_t m_total, Base b, std::vector<double> lambda_grid,
                          CltStatistic stat = {}, ScanMode mode = ScanMode::fast,
                          unsigned threads = 1) {
    if (m_total <= std::uint64_t(b.value()) * b.value())
        throw ValidationError("M must exceed the base squared");
    if (lambda_grid.empty()) throw ValidationError("lambda grid must be nonempty");
    for (std::size_t i = 1; i < lambda_grid.size(); ++i)
        if (!(lambda_grid[i] >= lambda_grid[i - 1]))
            throw ValidationError("lambda grid must be sorted ascending");
    if (stat.kind == CltStatistic::Kind::lp) {
        if (!(stat.p >= 1.0)) throw ValidationError("p must be >= 1");
        if (m_total > caps::lp_scan)
            throw ResourceLimitError("Lp scan exceeds the configured cap");
    } else {
        detail::validate_scan(m_total, b, mode);
    }
    const unsigned m = digit_count(m_total - 1, b);
    const MomentConstants mc = MomentConstants::for_base(b);
    const double c_b = to_double(mc.c_b);
    const double d_b = to_double(mc.d_b);
    const double ln_b = std::log(double(b.value()));
    const std::size_t cells = lambda_grid.size() + 1;
    std::vector<std::vector<std::uint64_t>> counts;

    auto bucket_of = [&](double value) {
        return std::size_t(std::upper_bound(lambda_grid.begin(), lambda_grid.end(), value) -
                           lambda_grid.begin());
    };

    if (stat.kind == CltStatistic::Kind::s) {
        const auto chunks =
            detail::partition_range(m_total, threads, detail::fast_reseed_block);
        counts.assign(chunks.size(), std::vector<std::uint64_t>(cells, 0));
        const std::uint64_t scale = pow_u64(b, m);
        const long double two_scale = 2.0L * static_cast<long double>(scale);
        detail::run_chunks(chunks, [&](std::size_t ci, detail::ChunkRange r) {
            auto& cell = counts[ci];
            auto emit = [&](std::uint64_t n, double s) {
                if (n < 2) return;
                ++cell[bucket_of(normalized_deviation(s, n, c_b, d_b, ln_b))];
            };
            if (mode == ScanMode::exact)
                detail::exact_chunk(r.begin, r.end, b, m,
                                    [&](std::uint64_t n, const BigInt& a) {
                                        emit(n, static_cast<double>(
                                                    a.convert_to<long double>() / two_scale));
                                    });
            else
                detail::fast_chunk(r.begin, r.end, b, m, [&](std::uint64_t n, long double s) {
                    emit(n, static_cast<double>(s));
                });
        });
    } else {
        // Lp statistic: the sorted point set grows one insertion per N, so
        // this path is inherently sequential and ignores the thread count.
        counts.assign(1, std::vector<std::uint64_t>(cells, 0));
        RadicalInverseWalker w(b, m, 0);
        const std::uint64_t scale = w.scale();
        std::vector<std::uint64_t> pts;
        pts.reserve(m_total);
        for (std::uint64_t idx = 0; idx + 1 < m_total; ++idx) {
            const std::uint64_t r = w.scaled();
            pts.insert(std::upper_bound(pts.begin(), pts.end(), r), r);
            const std::uint64_t n = idx + 1;
            if (n >= 2) {
                const long double integral = detail::lp_integral_real_sorted(
                    pts.data(), pts.size(), n, scale, stat.p);
                const double lp = static_cast<double>(
                    std::pow(integral, 1.0L / static_cast<long double>(stat.p)));
                ++counts[0][bucket_of(normalized_deviation(lp, n, c_b, d_b, ln_b))];
            }
            if (idx + 2 < m_total) w.advance();
        }
    }

    CltReport rep;
    rep.m_total = m_total;
    rep.base = b.value();
    rep.lambda_grid = std::move(lambda_grid);
    rep.empirical.resize(rep.lambda_grid.size());
    rep.phi_values.resize(rep.lambda_grid.size());
    const double denom = double(m_total - 2);
    std::uint64_t prefix = 0;
    const NormalCdf phi_fn;
    for (std::size_t i = 0; i < rep.lambda_grid.size(); ++i) {
        for (const auto& cell : counts) prefix += cell[i];
        rep.empirical[i] = double(prefix) / denom;
        rep.phi_values[i] = phi_fn(rep.lambda_grid[i]);
        rep.ks_distance =
            std::max(rep.ks_distance, std::fabs(rep.empirical[i] - rep.phi_values[i]));
    }
    const double logbM = std::log(double(m_total)) / ln_b;
    rep.theory_envelope = std::pow(std::log(logbM) / logbM, 0.25);
    return rep;
}

// Fraction of 0 <= N < M with |S(N) - c(b) log_b M| >= 25 lambda b
// sqrt(log_b M + 1), against the closed-form tail bound. Valid for
// lambda >= 3, where the bound's denominator is positive.
inline TailReport tail_scan(std::uint64_t m_total, Base b, double lambda,
                            unsigned threads = 1) {
    if (!(lambda >= 3.0)) throw ValidationError("lambda must be >= 3");
    detail::validate_scan(m_total, b, ScanMode::fast);
    const unsigned m = digit_count(m_total - 1, b);
    const MomentConstants mc = MomentConstants::for_base(b);
    const double c_b = to_double(mc.c_b);
    const double logbM = std::log(double(m_total)) / std::log(double(b.value()));
    const double center = c_b * logbM;
    const double threshold = 25.0 * lambda * double(b.value()) * std::sqrt(logbM + 1.0);
    const auto chunks = detail::partition_range(m_total, threads, detail::fast_reseed_block);
    std::vector<std::uint64_t> hits(chunks.size(), 0);
    std::vector<double> peaks(chunks.size(), 0.0);
    detail::run_chunks(chunks, [&](std::size_t ci, detail::ChunkRange r) {
        std::uint64_t h = 0;
        double peak = 0.0;
        detail::fast_chunk(r.begin, r.end, b, m, [&](std::uint64_t, long double s) {
            const double dev = std::fabs(static_cast<double>(s) - center);
            if (dev >= threshold) ++h;
            peak = std::max(peak, dev);
        });
        hits[ci] = h;
        peaks[ci] = peak;
    });
    TailReport rep;
    rep.m_total = m_total;
    rep.base = b.value();
    rep.lambda = lambda;
    rep.threshold = threshold;
    std::uint64_t total_hits = 0;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        total_hits += hits[i];
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, peaks[i]);
    }
    rep.empirical_fraction = double(total_hits) / double(m_total);
    const double rt = std::sqrt(lambda);
    rep.bound = 4.0 * rt / (std::exp(rt - 1.0) - 2.0) +
                std::pow(double(b.value()), -(std::sqrt(logbM) - 2.0));
    rep.satisfied = rep.empirical_fraction <= rep.bound;
    return rep;
}

// Per-N tail for the Lp norm of the profile: fraction of 2 <= N < M with
// | ||Delta_N||_p - c(b) log_b N | >= a_const lambda b sqrt(log_b N),
// against e^{-sqrt(lambda)}. The constant a_const is the caller's choice;
// the statement being probed is existential in it.
inline TailReport lp_tail_scan(std::uint64_t m_total, Base b, double p, double lambda,
                               double a_const) {
    if (!(p >= 1.0)) throw ValidationError("p must be >= 1");
    if (!(lambda >= 1.0)) throw ValidationError("lambda must be >= 1");
    if (!(a_const > 0.0)) throw ValidationError("threshold constant must be positive");
    if (m_total <= b.value()) throw ValidationError("M must exceed the base");
    if (m_total > caps::lp_scan)
        throw ResourceLimitError("Lp scan exceeds the configured cap");
    const unsigned m = digit_count(m_total - 1, b);
    const MomentConstants mc = MomentConstants::for_base(b);
    const double c_b = to_double(mc.c_b);
    const double ln_b = std::log(double(b.value()));
    RadicalInverseWalker w(b, m, 0);
    const std::uint64_t scale = w.scale();
    std::vector<std::uint64_t> pts;
    pts.reserve(m_total);
    std::uint64_t hit_count = 0;
    TailReport rep;
    for (std::uint64_t idx = 0; idx + 1 < m_total; ++idx) {
        const std::uint64_t r = w.scaled();
        pts.insert(std::upper_bound(pts.begin(), pts.end(), r), r);
        const std::uint64_t n = idx + 1;
        if (n >= 2) {
            const long double integral =
                detail::lp_integral_real_sorted(pts.data(), pts.size(), n, scale, p);
            const double lp = static_cast<double>(
                std::pow(integral, 1.0L / static_cast<long double>(p)));
            const double logbN = std::log(double(n)) / ln_b;
            const double dev = std::fabs(lp - c_b * logbN);
            rep.max_abs_deviation = std::max(rep.max_abs_deviation, dev);
            if (dev >= a_const * lambda * double(b.value()) * std::sqrt(logbN)) ++hit_count;
        }
        if (idx + 2 < m_total) w.advance();
    }
    rep.m_total = m_total;
    rep.base = b.value();
    rep.lambda = lambda;
    const double logbM = std::log(double(m_total)) / ln_b;
    rep.threshold = a_const * lambda * double(b.value()) * std::sqrt(logbM);
    rep.empirical_fraction = double(hit_count) / double(m_total - 2);
    rep.bound = std::exp(-std::sqrt(lambda));
    rep.satisfied = rep.empirical_fraction <= rep.bound;
    return rep;
}

} // namespace corput
