#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conemeans/action.hpp"
#include "conemeans/pricing.hpp"
#include "conemeans/walks.hpp"

namespace conemeans {

/// P(u|v) must lie in a closed interval or in a finite set.
struct Constraint {
  Vector u;
  Vector v;
  std::optional<std::pair<Rational, Rational>> interval;
  std::vector<Rational> allowed;
  std::string label;

  bool admits(const Rational& p) const;
};

struct ElementaryProperty {
  std::string kind;
  std::vector<Constraint> constraints;
};

/// Cylinders ((u, u + gu), {1/2}) for each probe u != 0 and element g.
ElementaryProperty invariance_property(const Action& action, const std::vector<Element>& elements,
                                       const std::vector<Vector>& probes);
/// Throws InputError unless every pair satisfies 0 <= u <= v != 0.
ElementaryProperty custom_property(std::vector<Constraint> constraints);

/// Every constraint, exactly, through the conditional mean of r.
Report check_property(const PricingPtr& r, const ElementaryProperty& property);

/// The cylinders plus the five equivalent forms
///   (i) r(gu, v) = r(u, v)   (ii) r(u, gv) = r(u, v)   (iii) r(gu, hv) = r(u, v)
///   (iv) r(u, gu) = 1        (v) r(u, u + gu) = 1/2
/// on consecutive probe pairs, and a consistency entry that fails when the
/// five verdicts disagree. Pairs where some form is not evaluable are skipped.
Report check_invariance(const PricingPtr& r, const Action& action, const std::vector<Element>& elements,
                        const std::vector<Vector>& probes);
/// r(gu, gv) = r(u, v).
Report check_equivariance(const PricingPtr& r, const Action& action, const std::vector<Element>& elements,
                          const std::vector<Vector>& probes);
/// r(μ∗u, v) = r(u, v).
Report check_stationarity(const PricingPtr& r, const Measure& mu, const std::vector<Vector>& probes);

/// Shifts ±1..±k of Z, or all non-identity elements of a finite group
/// (ball of radius k otherwise).
std::vector<Element> probe_elements(const Group& group, int k);

}  // namespace conemeans
