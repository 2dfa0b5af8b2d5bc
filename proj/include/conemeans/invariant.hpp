#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conemeans/action.hpp"
#include "conemeans/chains.hpp"
#include "conemeans/pricing.hpp"
#include "conemeans/walks.hpp"

namespace conemeans {

/// {g w : g in the ball of `radius`}, deduplicated; the whole orbit for a
/// finite group.
std::vector<Vector> orbit_ideal_generators(const Action& action, const Vector& w, int radius);

/// The orbit ideal V_{Gw} as a chain domain.
Domain orbit_ideal(const Action& action, const Vector& w);

/// Yields (U, J) with U = V_{Gw}, J positive, J(w) != 0 and J invariant (or
/// μ-stationary). Builtin suppliers cover finite groups and Z; user
/// suppliers are callbacks whose answers are validated on probe elements.
struct FunctionalSupplier {
  enum class Mode { Invariant, Stationary };
  Mode mode = Mode::Invariant;
  std::optional<Measure> mu;
  std::function<std::optional<PartialFunctional>(const Action&, const Vector&)> user;
  /// Elements used to validate invariance (defaults to the group's generators).
  std::vector<Element> probes;

  static FunctionalSupplier builtin_invariant() { return {}; }
  static FunctionalSupplier builtin_stationary(Measure mu);
};

/// Throws SupplierContractViolation when the (user) answer breaks the contract.
PartialFunctional supply_functional(const FunctionalSupplier& s, const Action& action, const Vector& w);

struct InvariantChain {
  Chain chain;
  /// For each chain element, the indices of F whose sum seeds its orbit ideal.
  std::vector<std::vector<std::size_t>> seeds;
};

/// w = ΣF, (U, J) = supply(w), F' = {v in F : J(v) = 0}, recurse on F' and
/// append (U, J). Re-checks (a) every v in F is handled, (b) every domain is
/// the orbit ideal of a subset sum, and validates the chain.
InvariantChain build_invariant_chain(const Action& action, const std::vector<Vector>& F, const FunctionalSupplier& s);

/// Re-runs checks (a) and (b) on a built chain.
Report check_invariant_chain(const Action& action, const std::vector<Vector>& F, const InvariantChain& built);

/// P(u|v) = J^v(u) / J^v(v) on pairs (u in E+E, v in E) with 0 <= u <= v != 0:
/// (CM1)-(CM3) and, when elements are given, P(gu|v) = P(u|v) whenever gu <= v.
/// Throws NotFullAt if some sum in E+E is not handled.
Report invariant_mean_on(const Chain& chain, const std::vector<Vector>& E, const Action* action = nullptr,
                         const std::vector<Element>& elements = {});

/// Exhaustive check over indicators of a finite point set (at most 12 points):
/// P(1_gA|1_B) = P(1_A|1_B) for every g and all A, gA ⊆ B, B nonempty.
Report indicator_invariance(const Chain& chain, const Action& action);

}  // namespace conemeans
