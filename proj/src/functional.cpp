#include "conemeans/functional.hpp"

#include <numeric>

#include "conemeans/errors.hpp"

namespace conemeans {

Functional Functional::weighted(SparseEntries weights) {
  for (const auto& [_, w] : weights)
    if (w < 0) throw InputError("weighted functional needs nonnegative weights");
  std::erase_if(weights, [](const auto& kv) { return kv.second == 0; });
  return Functional(WeightedFunctional{std::move(weights)});
}

Functional Functional::dual(std::vector<Rational> values) { return Functional(DualFunctional{std::move(values)}); }

Functional Functional::indicator_weights(const std::vector<Element>& points) {
  SparseEntries w;
  for (const auto& p : points) w[p] = 1;
  return weighted(std::move(w));
}

namespace {

Rational mean(const std::vector<Rational>& xs) {
  Rational s = std::accumulate(xs.begin(), xs.end(), Rational(0));
  return s / static_cast<long>(xs.size());
}

}  // namespace

Rational Functional::eval(const Vector& v) const {
  struct Visitor {
    const Vector& v;
    Rational operator()(const WeightedFunctional& f) const {
      if (v.space().as<PolyConeSpace>()) throw DomainError("weighted functional on a PolyCone space");
      Rational s = 0;
      if (auto e = v.sparse_entries()) {
        // Both maps are sorted by point.
        auto a = f.weights.begin();
        auto b = e->begin();
        while (a != f.weights.end() && b != e->end()) {
          if (a->first < b->first) {
            ++a;
          } else if (b->first < a->first) {
            ++b;
          } else {
            s += a->second * b->second;
            ++a, ++b;
          }
        }
        return s;
      }
      for (const auto& [k, w] : f.weights) s += w * v.at(k);
      return s;
    }
    Rational operator()(const CountingFunctional&) const {
      if (v.space().as<PolyConeSpace>()) throw DomainError("counting functional on a PolyCone space");
      if (!v.finitely_supported()) throw DomainError("counting functional on a vector with a periodic tail");
      Rational s = 0;
      v.for_each_value([&](const Rational& q) { s += q; });
      return s;
    }
    Rational operator()(const DensityFunctional&) const {
      auto p = v.periodic_data();
      if (!p) throw DomainError("density functional needs an eventually periodic Z-vector");
      return (mean(p->left) + mean(p->right)) / 2;
    }
    Rational operator()(const DualFunctional& f) const {
      auto d = v.dense_values();
      if (!d || d->size() != f.values.size()) throw DomainError("dual functional dimension mismatch");
      Rational s = 0;
      for (std::size_t i = 0; i < d->size(); ++i) s += f.values[i] * (*d)[i];
      return s;
    }
  };
  return std::visit(Visitor{v}, kind_);
}

std::string Functional::describe() const {
  struct Visitor {
    std::string operator()(const WeightedFunctional& f) const {
      return "weighted(" + std::to_string(f.weights.size()) + " points)";
    }
    std::string operator()(const CountingFunctional&) const { return "counting"; }
    std::string operator()(const DensityFunctional&) const { return "density"; }
    std::string operator()(const DualFunctional& f) const {
      std::string s = "dual(";
      for (std::size_t i = 0; i < f.values.size(); ++i) s += (i ? "," : "") + to_string(f.values[i]);
      return s + ")";
    }
  };
  return std::visit(Visitor{}, kind_);
}

bool is_positive_functional(const Functional& J, const Space& space) {
  if (auto d = J.as<DualFunctional>()) {
    auto pc = space.as<PolyConeSpace>();
    if (!pc || static_cast<int>(d->values.size()) != pc->dim) return false;
    for (const auto& g : pc->generators) {
      Rational s = 0;
      for (std::size_t i = 0; i < g.size(); ++i) s += d->values[i] * g[i];
      if (s < 0) return false;
    }
    return true;
  }
  if (space.as<PolyConeSpace>()) return false;
  if (J.as<DensityFunctional>()) return space.as<PeriodicZSpace>() != nullptr;
  return true;  // weights are validated nonnegative at construction
}

}  // namespace conemeans
