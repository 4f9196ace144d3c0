#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace fogsim {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;
// Catalogue rank, 1-based: item 1 is the most popular.
using ItemId = std::uint32_t;

// All simulator failures (bad input files, invalid configuration,
// unserviceable requests) surface as this exception type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The generator is fully specified by the standard, so streams are
// reproducible across toolchains. Distributions are not, which is why
// uniform01() is hand-rolled instead of using std::uniform_real_distribution.
using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent sub-stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix64(seed ^ mix64(salt));
}

// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace fogsim
