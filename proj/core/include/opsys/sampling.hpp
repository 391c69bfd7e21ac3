#pragma once

#include <cstdint>
#include <random>

#include "opsys/matrix.hpp"

namespace opsys {

/// SplitMix64 mix of (seed, stream): independent per-trial and per-restart
/// generators whose output does not depend on scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  bool coin(double p) { return uniform(0.0, 1.0) < p; }

  /// Uniform in [-scale, scale]; complex draws both parts.
  Scalar scalar(Field field, double scale);

  /// i.i.d. entries with standard deviation sd (complex: sd/sqrt(2) per part).
  Matrix gaussian(std::size_t n, Field field, double sd = 1.0);
  DenseVector gaussian_vector(std::size_t n, Field field, double sd = 1.0);
  DenseVector unit_vector(std::size_t n, Field field);

  /// v v* for a uniformly random unit vector v.
  Matrix rank_one_psd(std::size_t n, Field field);
  /// G G* / n with G Gaussian.
  Matrix wishart(std::size_t n, Field field);

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace opsys
