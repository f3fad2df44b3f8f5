// rng.hpp
// Counter-based deterministic sampling. Any run that names (seed, counter)
// reproduces the same stream; no generator state is carried around.
#pragma once

#include <cstdint>

namespace qdl {

// SplitMix64 finalizer applied to seed + (counter+1) * golden gamma.
inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace qdl
