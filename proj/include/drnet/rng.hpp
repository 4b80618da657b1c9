#pragma once

#include <cstdint>
#include <random>

namespace drnet {

/// Engine used for every stochastic draw in the simulator.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective 64-bit mixer used for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for substream `stream` of trial `trial_index`:
///   mix64(mix64(mix64(master_seed) ^ trial_index) ^ stream)
/// Depends only on its arguments, never on evaluation order or worker count.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                                    std::uint64_t stream) noexcept {
    return mix64(mix64(mix64(master_seed) ^ trial_index) ^ stream);
}

inline Rng make_rng(std::uint64_t master_seed, std::uint64_t trial_index, std::uint64_t stream) {
    return Rng{derive_seed(master_seed, trial_index, stream)};
}

/// Substream identifiers. Each purpose draws from its own engine so that the
/// number of draws in one purpose never shifts another (common random numbers).
namespace stream {
inline constexpr std::uint64_t kDevice = 1;
inline constexpr std::uint64_t kSilencingUser = 2;
inline constexpr std::uint64_t kSurvival = 3;
inline constexpr std::uint64_t kUplinkFading = 4;
inline constexpr std::uint64_t kDownlinkFading = 5;
inline constexpr std::uint64_t kAerial = 6;
/// Ring k of the terrestrial layout uses kRingBase + k.
inline constexpr std::uint64_t kRingBase = 1000;
}  // namespace stream

}  // namespace drnet
