#pragma once

#include <memory>
#include <string>

#include "conemeans/chains.hpp"
#include "conemeans/price.hpp"
#include "conemeans/report.hpp"
#include "conemeans/sampler.hpp"

namespace conemeans {

/// r: V+ × V+ → [0, +∞].
class VectorPricing {
 public:
  virtual ~VectorPricing() = default;
  virtual const Space& space() const = 0;
  virtual PriceValue eval(const Vector& u, const Vector& v) const = 0;
  virtual std::string describe() const = 0;
};

/// P(u|v) ∈ [0, 1] on pairs 0 <= u <= v != 0.
class ConditionalMean {
 public:
  virtual ~ConditionalMean() = default;
  virtual const Space& space() const = 0;
  /// Throws DomainError outside 0 <= u <= v != 0.
  virtual Rational eval(const Vector& u, const Vector& v) const = 0;
  virtual std::string describe() const = 0;
};

using PricingPtr = std::shared_ptr<const VectorPricing>;
using MeanPtr = std::shared_ptr<const ConditionalMean>;

/// Throws DomainError unless 0 <= u <= v and v != 0.
void require_mean_pair(const Vector& u, const Vector& v);

PricingPtr chain_pricing(Chain chain);
const Chain* pricing_chain(const PricingPtr& r);
/// r(u, v) = p(u) / p(v) for a strictly positive total functional p.
PricingPtr faithful_quotient(const Space& space, Functional p);
/// P(u|v) = r(u, v).
MeanPtr cm_from_vp(PricingPtr r);
/// r(u, v) = P(u | u+v) / P(v | u+v), with r(0, 0) = 1.
PricingPtr vp_from_cm(MeanPtr P);
/// Mutation helper: r, except r(u, v) + eps on one pair.
PricingPtr perturbed_pricing(PricingPtr r, Vector u, Vector v, Rational eps);

/// (VP1)-(VP8) on sampled triples and (CM1)-(CM3) through cm_from_vp.
/// (VP2) instances of the form 0·∞ are counted as skipped, as are (VP1) and
/// (VP5) with w = 0 and (VP8) at (0, 0).
Report check_axioms(const PricingPtr& r, const SamplerConfig& config);
/// (CM1)-(CM3) and the [0, 1] range.
Report check_axioms(const MeanPtr& P, const SamplerConfig& config);

/// vp_from_cm ∘ cm_from_vp = id and cm_from_vp ∘ vp_from_cm = id on samples.
Report check_roundtrip(const PricingPtr& r, const SamplerConfig& config);
Report check_roundtrip(const MeanPtr& P, const SamplerConfig& config);

/// r(u, v) != +∞, i.e. u lies in the finiteness ideal of v.
bool fin_ideal_contains(const PricingPtr& r, const Vector& v, const Vector& u);

}  // namespace conemeans
