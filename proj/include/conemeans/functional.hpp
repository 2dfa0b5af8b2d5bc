#pragma once

#include <string>
#include <variant>
#include <vector>

#include "conemeans/vector.hpp"

namespace conemeans {

/// Finite nonnegative weights; J(v) = sum_x w(x) v(x).
struct WeightedFunctional {
  SparseEntries weights;
  friend bool operator==(const WeightedFunctional&, const WeightedFunctional&) = default;
};
/// Sum of all entries. Only defined on finitely supported vectors.
struct CountingFunctional {
  friend bool operator==(const CountingFunctional&, const CountingFunctional&) = default;
};
/// Two-sided mean on eventually periodic Z-vectors: the average of the mean
/// of the left period and the mean of the right period.
struct DensityFunctional {
  friend bool operator==(const DensityFunctional&, const DensityFunctional&) = default;
};
/// Dot product with a fixed rational vector (PolyCone spaces).
struct DualFunctional {
  std::vector<Rational> values;
  friend bool operator==(const DualFunctional&, const DualFunctional&) = default;
};

class Functional {
 public:
  using Kind = std::variant<WeightedFunctional, CountingFunctional, DensityFunctional, DualFunctional>;

  static Functional weighted(SparseEntries weights);
  static Functional counting() { return Functional(CountingFunctional{}); }
  static Functional density() { return Functional(DensityFunctional{}); }
  static Functional dual(std::vector<Rational> values);
  /// Unit weights on the listed points.
  static Functional indicator_weights(const std::vector<Element>& points);

  const Kind& kind() const { return kind_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&kind_);
  }

  /// Exact value. Throws DomainError outside the functional's domain
  /// (Counting on a vector with a periodic tail, Density off Z, ...).
  Rational eval(const Vector& v) const;
  std::string describe() const;

  friend bool operator==(const Functional&, const Functional&) = default;

 private:
  explicit Functional(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

inline Rational functional_eval(const Functional& J, const Vector& v) { return J.eval(v); }

/// True when the functional is nonnegative on every generator of the
/// space's positive cone (PolyCone) or has nonnegative weights.
bool is_positive_functional(const Functional& J, const Space& space);

}  // namespace conemeans
