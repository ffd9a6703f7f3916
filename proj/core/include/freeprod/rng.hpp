#pragma once

#include <cstdint>
#include <random>

namespace freeprod {

/// Independent generator for stream `stream` of master seed `seed`. Trial t of
/// a Monte Carlo run always uses stream t, so serial and threaded runs agree.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream);

/// Seed used when none is given on the command line.
inline constexpr std::uint64_t kDefaultSeed = 42;

}  // namespace freeprod
