#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace driverid {

// All randomness in the toolkit flows from one top-level seed. Components
// take independent sub-streams via derive_seed(seed, tag, indices...), so
// changing e.g. the number of forest trees never perturbs fold shuffling.
// Shuffling and sampling are implemented here rather than with
// std::shuffle / std::*_distribution, whose outputs are not pinned by the
// standard; this keeps trained models and reports bit-identical across
// standard library versions.

namespace seed_tag {
inline constexpr std::uint64_t synth = 0x01;
inline constexpr std::uint64_t fold_shuffle = 0x02;
inline constexpr std::uint64_t forest_tree = 0x03;
inline constexpr std::uint64_t mlp = 0x04;
inline constexpr std::uint64_t train = 0x05;
inline constexpr std::uint64_t tree_split = 0x06;
}  // namespace seed_tag

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed) { return splitmix64(seed); }

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t idx, Rest... rest) {
  return derive_seed(splitmix64(seed ^ (idx + 0x632be59bd9b4e019ULL)), rest...);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps the
  // mapping unbiased and implementation-independent.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Box-Muller; one value per draw, the second is discarded so the stream
  // stays a pure function of call count.
  double normal(double mean, double stddev) {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return mean + stddev * (r * std::cos(two_pi * u2));
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace driverid
