#pragma once

#include <cstdint>
#include <vector>

namespace dmclp {

// Binomial coefficient, saturating at cap + 1 so callers can test guards
// without overflow (assumes cap <= ~1e14).
inline std::uint64_t binom_capped(int n, int k, std::uint64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        if (r > cap) return cap + 1;
    }
    return r;
}

// Advance comb (k ascending indices out of [0, n)) to the next combination in
// lexicographic order; false when exhausted.
inline bool next_combination(std::vector<int>& comb, int n) {
    const int k = static_cast<int>(comb.size());
    for (int i = k - 1; i >= 0; --i) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace dmclp
