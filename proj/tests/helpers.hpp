#pragma once

#include <doctest.h>

#include <cstdint>
#include <random>

#include "conemeans/chains.hpp"
#include "conemeans/rational.hpp"
#include "conemeans/vector.hpp"

namespace conemeans::test {

inline Rational q(long p, long d = 1) { return make_rational(p, d); }

inline Vector xvec(std::vector<Rational> values) {
  return Vector::coords(static_cast<int>(values.size()), values);
}

inline Vector zind(std::vector<std::int64_t> pts) { return z::indicator(pts); }

inline Vector z_even() { return z::periodic({Rational(1), Rational(0)}); }

/// Small independent generator for property tests: values in {0, 1/d, ..., 9/d}.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  Rational entry(bool allow_negative = false) {
    long p = static_cast<long>(rng_() % 10);
    long d = 1 + static_cast<long>(rng_() % 4);
    if (allow_negative && rng_() % 2) p = -p;
    return make_rational(p, d);
  }
  Vector finite(int n, bool allow_negative = false) {
    std::vector<Rational> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng_() % 4 == 0 ? Rational(0) : entry(allow_negative);
    return Vector::coords(n, v);
  }
  Vector epz(bool allow_negative = false) {
    auto period = [&] {
      std::vector<Rational> p(1 + rng_() % 2);
      const bool zero = rng_() % 2;
      for (auto& x : p) x = zero ? Rational(0) : entry(allow_negative);
      return p;
    };
    auto left = period();
    auto right = period();
    std::vector<Rational> core(rng_() % 5);
    for (auto& x : core) x = entry(allow_negative);
    const auto start = static_cast<std::int64_t>(rng_() % 9) - 4;
    return z::make(std::move(left), start, std::move(core), std::move(right));
  }
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace conemeans::test
