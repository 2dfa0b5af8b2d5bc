#include "conemeans/price.hpp"

#include "conemeans/errors.hpp"

namespace conemeans {

PriceValue PriceValue::ratio(const Rational& a, const Rational& b) {
  if (b == 0) {
    if (a == 0) throw DomainError("0/0 price");
    return infinity();
  }
  return PriceValue(Rational(a / b));
}

const Rational& PriceValue::value() const {
  if (infinite_) throw DomainError("price is +inf");
  return value_;
}

PriceValue PriceValue::operator+(const PriceValue& o) const {
  if (infinite_ || o.infinite_) return infinity();
  return PriceValue(Rational(value_ + o.value_));
}

PriceValue PriceValue::operator-(const PriceValue& o) const {
  return PriceValue(Rational(value() - o.value()));
}

bool PriceValue::undefined_product(const PriceValue& a, const PriceValue& b) {
  return (a.infinite_ && b.is_finite() && b.value_ == 0) || (b.infinite_ && a.is_finite() && a.value_ == 0);
}

PriceValue PriceValue::operator*(const PriceValue& o) const {
  if (undefined_product(*this, o)) throw UndefinedProduct();
  if (infinite_ || o.infinite_) return infinity();
  return PriceValue(Rational(value_ * o.value_));
}

PriceValue PriceValue::inverse() const {
  if (infinite_) return PriceValue(0L);
  if (value_ == 0) return infinity();
  return PriceValue(Rational(1 / value_));
}

std::string PriceValue::to_string() const { return infinite_ ? "inf" : conemeans::to_string(value_); }

PriceValue PriceValue::parse(const std::string& text) {
  if (text == "inf" || text == "+inf") return infinity();
  return PriceValue(parse_rational(text));
}

}  // namespace conemeans
