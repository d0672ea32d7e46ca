#pragma once

// Seedable generators with one independent substream per sample index, so
// serial and parallel sweeps draw identical numbers.

#include <cstdint>
#include <random>

namespace latdisc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt = 0) {
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  s ^= index * 0xd1b54a32d192ed03ULL;
  const std::uint64_t b = splitmix64(s);
  s ^= attempt * 0xabc98388fb8fac03ULL;
  const std::uint64_t c = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace latdisc
