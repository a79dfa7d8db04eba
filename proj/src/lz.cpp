#include "sbx/lz.hpp"

#include <cmath>
#include <stdexcept>

namespace sbx::lz {

std::size_t lz76_phrase_count(std::span<const std::uint8_t> s) {
    const std::size_t n = s.size();
    if (n == 0) throw std::invalid_argument("empty input");

    std::size_t count = 0;
    std::size_t p = 0;
    while (p < n) {
        // Longest reproducible extension: max over start positions j < p of
        // the common run length between s[j..] and s[p..]. Matches may run
        // past p (self-overlapping copy).
        std::size_t best = 0;
        for (std::size_t j = 0; j < p; ++j) {
            if (s[j] != s[p]) continue;
            std::size_t m = 1;
            while (p + m < n && s[j + m] == s[p + m]) ++m;
            if (m > best) {
                best = m;
                if (p + best >= n) break; // tail fully reproducible
            }
        }
        ++count;
        p += (p + best < n) ? best + 1 : best;
    }
    return count;
}

double lz_complexity(const BitString& s) {
    const std::size_t n = s.size();
    if (n < 2) throw std::invalid_argument("string too short for log2 scaling");

    bool constant = true;
    for (std::size_t i = 1; i < n; ++i) {
        if (s[i] != s[0]) { constant = false; break; }
    }
    // Raw phrase counting gives 2 phrases for a constant string; the
    // convention here pins the minimum to log2(N) instead.
    if (constant) return std::log2(static_cast<double>(n));

    const std::size_t fwd = lz76_phrase_count(s);
    const std::size_t bwd = lz76_phrase_count(s.reversed());
    return std::log2(static_cast<double>(n)) * static_cast<double>(fwd + bwd) / 2.0;
}

} // namespace sbx::lz
