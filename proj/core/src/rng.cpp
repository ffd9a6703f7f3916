#include "freeprod/rng.hpp"

namespace freeprod {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x & 0xffffffffu); };
  auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), 0x66726565u};
  return std::mt19937_64(seq);
}

}  // namespace freeprod
