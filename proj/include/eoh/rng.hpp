#pragma once

#include <cstdint>

namespace eoh {

// Counter-based deterministic generator: every draw is a pure function of
// (seed, counters), so shots and qubits can be sampled independently and
// in any order or thread without shared state.
namespace rng {

constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t keyed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
    return mix(mix(mix(mix(seed) ^ a) ^ b) ^ c);
}

// Uniform in [0, 1).
constexpr double uniform(std::uint64_t seed, std::uint64_t a,
                         std::uint64_t b = 0, std::uint64_t c = 0) {
    return double(keyed(seed, a, b, c) >> 11) * 0x1.0p-53;
}

} // namespace rng
} // namespace eoh
