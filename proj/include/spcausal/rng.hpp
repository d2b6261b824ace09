#pragma once

#include <cstdint>
#include <random>

namespace spcausal {

// Engine plus the (seed, stream) pair that produced it. Streams give each
// replication its own independent, reproducible randomness.
struct SeededRng {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::mt19937_64 engine;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline SeededRng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  SeededRng rng;
  rng.seed = seed;
  rng.stream = stream;
  rng.engine.seed(splitmix64(seed ^ splitmix64(stream)));
  return rng;
}

}  // namespace spcausal
