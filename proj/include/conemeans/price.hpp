#pragma once

#include <string>

#include "conemeans/rational.hpp"

namespace conemeans {

/// Value in [0, +∞] with the usual extended arithmetic; 0·∞ is undefined.
class PriceValue {
 public:
  PriceValue() = default;
  PriceValue(const Rational& q) : value_(q) {}  // NOLINT(implicit)
  PriceValue(long q) : value_(q) {}             // NOLINT(implicit)
  static PriceValue infinity() {
    PriceValue p;
    p.infinite_ = true;
    return p;
  }
  /// a / b with positive/0 = ∞ and 0/0 rejected.
  static PriceValue ratio(const Rational& a, const Rational& b);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws DomainError on ∞.
  const Rational& value() const;

  PriceValue operator+(const PriceValue& o) const;
  PriceValue operator-(const PriceValue& o) const;  // finite operands only
  /// Throws UndefinedProduct on 0·∞.
  PriceValue operator*(const PriceValue& o) const;
  PriceValue inverse() const;  // 1/0 = ∞, 1/∞ = 0

  /// True when the product is 0·∞.
  static bool undefined_product(const PriceValue& a, const PriceValue& b);

  std::string to_string() const;
  static PriceValue parse(const std::string& text);

  friend bool operator==(const PriceValue& a, const PriceValue& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator!=(const PriceValue& a, const PriceValue& b) { return !(a == b); }
  friend bool operator<(const PriceValue& a, const PriceValue& b) {
    if (a.infinite_) return false;
    return b.infinite_ || a.value_ < b.value_;
  }
  friend bool operator<=(const PriceValue& a, const PriceValue& b) { return !(b < a); }

 private:
  bool infinite_ = false;
  Rational value_{0};
};

}  // namespace conemeans
