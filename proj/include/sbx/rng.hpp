#pragma once

#include <cstdint>
#include <string_view>

namespace sbx::rng {

// Finalizer from the splitmix64 generator; bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Seed for one trial of one configuration. Trials drawn from this are
// reproducible regardless of how they are scheduled across workers.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view label,
                                   std::uint64_t trial_index) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ fnv1a64(label));
    return splitmix64(h ^ trial_index);
}

} // namespace sbx::rng
