#pragma once

// Shared deterministic randomness helpers. All generated data in the
// project derives from mt19937_64 through these functions, so results
// reproduce bit-for-bit across platforms and runs.

#include <cstdint>
#include <random>

namespace dgr {

// 53-bit uniform double in [0, 1): the top 53 bits of one mt19937_64 draw
// scaled by 2^-53.
inline double unit_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Decorrelated sub-seed for an indexed task under one master seed.
inline std::uint64_t sub_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master + 0x9E3779B97F4A7C15ull * (stream + 1));
}

}  // namespace dgr
