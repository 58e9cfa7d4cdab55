#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "corput/limit_stats.hpp"
#include "corput/radix.hpp"
#include "corput/rational.hpp"

namespace corput {

// %.15g everywhere a double crosses a process boundary: round-trippable for
// the magnitudes in play and stable across runs.
inline std::string fmt_g15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

inline void write_sequence_csv(std::ostream& os, std::uint64_t n_points, Base b) {
    if (n_points > caps::sequence_prefix)
        throw ResourceLimitError("sequence prefix exceeds the configured cap");
    os << "n,num,den\n";
    if (n_points == 0) return;
    const unsigned m = digit_count(n_points - 1, b);
    RadicalInverseWalker w(b, m, 0);
    for (std::uint64_t n = 0; n < n_points; ++n) {
        const Rational x = make_rational(BigInt(w.scaled()), BigInt(w.scale()));
        os << n << ',' << num(x) << ',' << den(x) << '\n';
        if (n + 1 < n_points) w.advance();
    }
}

inline void write_sequence_json(std::ostream& os, std::uint64_t n_points, Base b) {
    if (n_points > caps::sequence_prefix)
        throw ResourceLimitError("sequence prefix exceeds the configured cap");
    os << '[';
    if (n_points > 0) {
        const unsigned m = digit_count(n_points - 1, b);
        RadicalInverseWalker w(b, m, 0);
        const long double scale_ld = static_cast<long double>(w.scale());
        for (std::uint64_t n = 0; n < n_points; ++n) {
            if (n) os << ',';
            const double x = static_cast<double>(static_cast<long double>(w.scaled()) / scale_ld);
            os << "{\"n\":" << n << ",\"x\":" << fmt_g15(x) << '}';
            if (n + 1 < n_points) w.advance();
        }
    }
    os << "]\n";
}

inline void write_clt_csv(std::ostream& os, const CltReport& r) {
    os << "lambda,empirical,phi,abs_diff\n";
    for (std::size_t i = 0; i < r.lambda_grid.size(); ++i)
        os << fmt_g15(r.lambda_grid[i]) << ',' << fmt_g15(r.empirical[i]) << ','
           << fmt_g15(r.phi_values[i]) << ','
           << fmt_g15(std::fabs(r.empirical[i] - r.phi_values[i])) << '\n';
}

inline void write_clt_json(std::ostream& os, const CltReport& r) {
    os << "{\"M\":" << r.m_total << ",\"base\":" << r.base << ",\"ks_distance\":"
       << fmt_g15(r.ks_distance) << ",\"theory_envelope\":" << fmt_g15(r.theory_envelope)
       << ",\"rows\":[";
    for (std::size_t i = 0; i < r.lambda_grid.size(); ++i) {
        if (i) os << ',';
        os << "{\"lambda\":" << fmt_g15(r.lambda_grid[i]) << ",\"empirical\":"
           << fmt_g15(r.empirical[i]) << ",\"phi\":" << fmt_g15(r.phi_values[i])
           << ",\"abs_diff\":" << fmt_g15(std::fabs(r.empirical[i] - r.phi_values[i])) << '}';
    }
    os << "]}\n";
}

// Key order is part of the interface contract for this report.
inline void write_tail_json(std::ostream& os, const TailReport& r) {
    os << "{\"M\":" << r.m_total << ",\"base\":" << r.base << ",\"lambda\":"
       << fmt_g15(r.lambda) << ",\"threshold\":" << fmt_g15(r.threshold)
       << ",\"empirical_fraction\":" << fmt_g15(r.empirical_fraction) << ",\"bound\":"
       << fmt_g15(r.bound) << ",\"satisfied\":" << (r.satisfied ? "true" : "false") << "}\n";
}

namespace detail {

inline void append_u64(std::string& buf, std::uint64_t v) {
    char tmp[24];
    int len = std::snprintf(tmp, sizeof tmp, "%llu", static_cast<unsigned long long>(v));
    buf.append(tmp, std::size_t(len));
}

inline void append_g15(std::string& buf, double x) {
    char tmp[40];
    int len = std::snprintf(tmp, sizeof tmp, "%.15g", x);
    buf.append(tmp, std::size_t(len));
}

} // namespace detail

// Streams the running-sum table for n in [0, M) without materializing it.
// Rows are produced in waves; inside a wave, block-aligned chunks render into
// private buffers in parallel and are flushed in order, so the bytes written
// are identical for every thread count in both modes.
inline void scan_s_to_stream(std::ostream& os, std::uint64_t m_total, Base b, ScanMode mode,
                             unsigned threads, bool json) {
    detail::validate_scan(m_total, b, mode);
    const unsigned m = digit_count(m_total - 1, b);
    const std::uint64_t scale = pow_u64(b, m);
    const BigInt two_scale_big = BigInt(scale) << 1;
    const long double two_scale_ld = 2.0L * static_cast<long double>(scale);
    const MomentConstants mc = MomentConstants::for_base(b);
    const double c_b = to_double(mc.c_b);
    const double d_b = to_double(mc.d_b);
    const double ln_b = std::log(double(b.value()));
    if (json)
        os << '[';
    else
        os << "n,s,normalized\n";
    const std::uint64_t wave = 1ull << 20;
    for (std::uint64_t w0 = 0; w0 < m_total; w0 += wave) {
        const std::uint64_t w1 = std::min(m_total, w0 + wave);
        auto chunks = detail::partition_range(w1 - w0, threads, detail::fast_reseed_block);
        for (auto& c : chunks) {
            c.begin += w0;
            c.end += w0;
        }
        std::vector<std::string> bufs(chunks.size());
        detail::run_chunks(chunks, [&](std::size_t ci, detail::ChunkRange r) {
            std::string& buf = bufs[ci];
            buf.reserve(std::size_t(r.end - r.begin) * 40);
            auto row_head = [&](std::uint64_t n) {
                if (json) {
                    if (n) buf.push_back(',');
                    buf.append("{\"n\":");
                    detail::append_u64(buf, n);
                    buf.append(",\"s\":");
                } else {
                    detail::append_u64(buf, n);
                    buf.push_back(',');
                }
            };
            auto row_tail = [&](std::uint64_t n, double s) {
                if (json) {
                    buf.append(",\"normalized\":");
                    if (n >= 2)
                        detail::append_g15(buf, normalized_deviation(s, n, c_b, d_b, ln_b));
                    else
                        buf.append("null");
                    buf.push_back('}');
                } else {
                    buf.push_back(',');
                    if (n >= 2)
                        detail::append_g15(buf, normalized_deviation(s, n, c_b, d_b, ln_b));
                    buf.push_back('\n');
                }
            };
            if (mode == ScanMode::exact)
                detail::exact_chunk(r.begin, r.end, b, m,
                                    [&](std::uint64_t n, const BigInt& a) {
                                        row_head(n);
                                        const Rational s = make_rational(a, two_scale_big);
                                        if (json) buf.push_back('"');
                                        buf.append(to_fraction_string(s));
                                        if (json) buf.push_back('"');
                                        row_tail(n, static_cast<double>(
                                                        a.convert_to<long double>() /
                                                        two_scale_ld));
                                    });
            else
                detail::fast_chunk(r.begin, r.end, b, m, [&](std::uint64_t n, long double s) {
                    row_head(n);
                    detail::append_g15(buf, static_cast<double>(s));
                    row_tail(n, static_cast<double>(s));
                });
        });
        for (const auto& s : bufs) os << s;
    }
    if (json) os << "]\n";
}

} // namespace corput
