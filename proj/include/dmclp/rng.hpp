#pragma once

#include <cstdint>
#include <random>

namespace dmclp {

// All random generation goes through these helpers on top of std::mt19937_64.
// The engine's output sequence is pinned by the C++ standard; the standard
// library *distributions* are not, so we map raw 64-bit draws ourselves to
// keep seeds portable across toolchains.
using Rng = std::mt19937_64;

// Uniform double in [lo, hi) using the top 53 bits of one draw.
inline double uniform_real(Rng& rng, double lo, double hi) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

// Uniform integer in [lo, hi], rejection sampling to avoid modulo bias.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(rng()); // full 64-bit span
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % range);
}

} // namespace dmclp
