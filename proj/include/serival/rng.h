#ifndef SERIVAL_RNG_H
#define SERIVAL_RNG_H

#include <cstdint>
#include <random>

namespace serival {

/// Derives an independent stream seed from (seed, index); used so that
/// sample k of a scan does not depend on how samples are split between
/// workers.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform integer in [0, n). Plain modular reduction so the mapping is
/// identical on every standard library (the engine's output is specified,
/// the standard distributions are not).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace serival

#endif  // SERIVAL_RNG_H
