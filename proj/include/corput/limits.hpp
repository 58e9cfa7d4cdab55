#pragma once

#include <cstdint>

// Resource caps. Everything here is sized for interactive desk use; raising a
// cap is safe but turns some O(N) paths into long waits.
namespace corput::caps {

inline constexpr std::uint64_t sequence_prefix = 1ull << 20;
inline constexpr std::uint64_t profile_points  = 1ull << 21;
inline constexpr std::uint64_t scan_exact      = 1ull << 26;
inline constexpr std::uint64_t scan_fast       = 1ull << 32;
inline constexpr std::uint64_t enumeration     = 1'000'000;  // full b^m sweeps
inline constexpr std::uint64_t lp_scan         = 1ull << 16; // per-N Lp statistics
inline constexpr unsigned      max_power       = 64;         // largest Lp exponent

} // namespace corput::caps
