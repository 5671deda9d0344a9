#pragma once

#include <cstdint>

namespace dirac {

using Seed = std::uint64_t;

/// Counter-based stream: every (seed, index) pair maps to an independent
/// 64-bit word, so windows can be generated in any order or in parallel and
/// overlapping windows agree on shared indices.
///
/// The mixer is two rounds of the SplitMix64 finaliser, first over the seed
/// and then over (seed hash XOR index). This is fixed for the lifetime of the
/// 1.x series; tests only rely on statistical properties of the stream.
namespace rng {

constexpr std::uint64_t splitmix64_finalise(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t hash(Seed seed, std::int64_t index)
{
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    const std::uint64_t key = splitmix64_finalise(seed + golden);
    return splitmix64_finalise(key ^ (static_cast<std::uint64_t>(index) * golden + golden));
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double uniform01(Seed seed, std::int64_t index)
{
    return static_cast<double>(hash(seed, index) >> 11) * 0x1.0p-53;
}

/// +1 with probability p, -1 with probability 1 - p. Exact at p = 0 and p = 1.
constexpr int bernoulli_sign(double p, Seed seed, std::int64_t index)
{
    return uniform01(seed, index) < p ? 1 : -1;
}

} // namespace rng
} // namespace dirac
