#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conemeans/group.hpp"
#include "conemeans/vector.hpp"

namespace conemeans {

/// One forced equation r(argument, u) = value for a hypothetical invariant
/// signed extension r. Tags:
///   VP3             argument = u, value 1
///   VP1-zero        r(0, u) = 0, from r(u + 0, u) = r(u, u) + r(0, u) and a VP3 step
///   VP1-difference  argument = a - b, value = va - vb (refs {a, b})
///   VP1-sum         argument = Σ refs, value = Σ values
///   INV             argument = h · ref, same value (refs {a}, element h)
///   contradiction   refs {a, b} with equal arguments and different values;
///                   restates step a
struct RefutationStep {
  std::string tag;
  Vector argument;
  Rational value;
  std::vector<std::size_t> refs;
  std::optional<Element> element;
  std::string claim;
};

struct RefutationCertificate {
  std::string group;
  Element g;
  Vector u;
  std::vector<RefutationStep> steps;
  /// "q = 0" for an element of order q, "1 = −1" on Z.
  std::string contradiction;
};

/// Finite order q: u = δ_e - δ_g and Σ_n g^n u = 0 force q = 0. On Z with
/// g = k != 0: u alternates with period 2|k|, gu = -u forces 1 = −1.
/// Throws UnsupportedSpace for infinite-order elements outside Z and
/// InputError for g = e.
RefutationCertificate refute_signed_invariant(const Group& group, const Element& g);

/// Re-derives every step; returns the first problem found, or nullopt.
std::optional<std::string> replay_refutation(const RefutationCertificate& cert);

}  // namespace conemeans
