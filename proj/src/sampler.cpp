#include "conemeans/sampler.hpp"

#include "conemeans/errors.hpp"

namespace conemeans {

Sampler::Sampler(Space space, SamplerConfig config)
    : space_(std::move(space)), config_(config), rng_(config.seed) {
  if (auto fc = space_.as<FiniteCoordSpace>()) {
    for (int i = 0; i < fc->size; ++i) points_.push_back({i});
  } else if (auto gs = space_.as<GroupSpace>()) {
    points_ = gs->group.is_finite() ? gs->group.elements() : gs->group.ball(2);
  }
}

Rational Sampler::positive_rational() {
  const auto num = static_cast<long>(1 + below(static_cast<std::uint64_t>(config_.max_numerator)));
  const auto den = static_cast<long>(1 + below(static_cast<std::uint64_t>(config_.max_denominator)));
  return make_rational(num, den);
}

Rational Sampler::entry() { return chance(config_.zero_probability) ? Rational(0) : positive_rational(); }

Vector Sampler::positive_vector() {
  if (space_.as<PeriodicZSpace>()) {
    auto period = [&](bool zero_tail) {
      std::vector<Rational> p(1 + below(2));
      for (auto& q : p) q = zero_tail ? Rational(0) : entry();
      return p;
    };
    // Tails are zero half of the time so finitely supported vectors are common.
    auto left = period(chance(0.5));
    auto right = period(chance(0.5));
    std::vector<Rational> core(below(5));
    for (auto& q : core) q = entry();
    const auto start = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(2 * config_.spread + 1))) - config_.spread;
    return z::make(std::move(left), start, std::move(core), std::move(right));
  }
  if (auto pc = space_.as<PolyConeSpace>()) {
    std::vector<Rational> v(static_cast<std::size_t>(pc->dim), Rational(0));
    for (const auto& g : pc->generators) {
      const Rational c = entry();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * g[i];
    }
    return Vector::dense(space_, std::move(v));
  }
  SparseEntries e;
  for (const auto& p : points_) {
    Rational q = entry();
    if (q != 0) e.emplace(p, q);
  }
  return Vector::sparse(space_, std::move(e));
}

Vector Sampler::nonzero_positive_vector() {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vector v = positive_vector();
    if (!v.is_zero()) return v;
  }
  throw InputError("sampler could not produce a nonzero vector");
}

}  // namespace conemeans
