#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "conemeans/vector.hpp"

namespace conemeans {

struct SamplerConfig {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  /// Probability that an entry (or a Z tail) is zero.
  double zero_probability = 0.15;
  int max_numerator = 9;
  int max_denominator = 4;
  /// Z vectors: cores start in [-spread, spread].
  int spread = 4;
};

/// Seeded generator of exact positive vectors in a space.
class Sampler {
 public:
  Sampler(Space space, SamplerConfig config);

  const Space& space() const { return space_; }
  const SamplerConfig& config() const { return config_; }

  Rational positive_rational();
  /// Positive rational, zero with the configured probability.
  Rational entry();
  Vector positive_vector();
  Vector nonzero_positive_vector();
  std::uint64_t below(std::uint64_t n) { return n ? rng_() % n : 0; }
  bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

 private:
  Space space_;
  SamplerConfig config_;
  std::mt19937_64 rng_;
  std::vector<Element> points_;
};

}  // namespace conemeans
