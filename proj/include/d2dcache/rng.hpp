#pragma once

#include <cstdint>
#include <random>

namespace d2dcache {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Substream `stream` of a master seed. This is the splitting rule used
// everywhere a run needs several independent streams (simulation blocks,
// baseline replications): mix master and stream index separately, then mix
// the combination once more so nearby indices land far apart.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

}  // namespace d2dcache
