#pragma once

#include <cstdint>
#include <random>

namespace qba {

// splitmix64 step; used to derive independent sub-seeds from a master seed so
// that per-trial generators are stable regardless of execution order.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(uint64_t seed, uint64_t index = 0) {
    return std::mt19937_64(mix_seed(seed, index));
}

}  // namespace qba
