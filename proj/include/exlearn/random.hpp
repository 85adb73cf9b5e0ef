#pragma once

#include <cstdint>
#include <random>

namespace exlearn {

// All randomness flows through std::mt19937_64, whose output sequence is
// fixed by the standard. Doubles are produced from the top 53 bits rather
// than std::uniform_real_distribution, whose algorithm is unspecified.
using RandomStream = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for an independent sub-stream identified by `index`.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// Uniform variate on [0, 1).
inline double uniform01(RandomStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace exlearn
