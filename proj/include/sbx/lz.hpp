#pragma once

#include <cstdint>
#include <span>

#include "sbx/bitstring.hpp"

namespace sbx::lz {

/// LZ76 exhaustive-history phrase count, scanning left to right.
///
/// Each phrase is the longest prefix of the unread tail that occurs as a
/// substring starting before the current position (self-overlap allowed),
/// extended by one innovation symbol. A final phrase that ends exactly at
/// the string boundary without an innovation still counts as one phrase.
std::size_t lz76_phrase_count(std::span<const std::uint8_t> symbols);

inline std::size_t lz76_phrase_count(const BitString& s) {
    return lz76_phrase_count(std::span<const std::uint8_t>(s.bits()));
}

/// Two-direction averaged LZ complexity:
///   log2(N) * (N_fwd + N_bwd) / 2
/// where N_fwd/N_bwd are the phrase counts of the string and its reversal.
/// Constant strings (all zeros or all ones) score exactly log2(N), the
/// attainable minimum. Requires N >= 2.
double lz_complexity(const BitString& s);

} // namespace sbx::lz
