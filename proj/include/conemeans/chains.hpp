#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conemeans/functional.hpp"
#include "conemeans/order.hpp"
#include "conemeans/price.hpp"

namespace conemeans {

/// The whole space.
struct WholeDomain {};
/// The ideal V_A generated by finitely many positive vectors.
struct GeneratedDomain {
  std::vector<Vector> generators;
};
/// The shift-orbit ideal V_{Zw} of an eventually periodic vector. A vector
/// belongs to it iff each of its nonzero tails faces a nonzero tail of w
/// (finitely supported vectors belong as soon as w != 0).
struct ShiftOrbitDomain {
  Vector seed;
};

class Domain {
 public:
  using Kind = std::variant<WholeDomain, GeneratedDomain, ShiftOrbitDomain>;

  static Domain whole() { return Domain(WholeDomain{}); }
  static Domain generated(std::vector<Vector> generators);
  static Domain shift_orbit(Vector seed);
  /// The ideal of finitely supported vectors on Z.
  static Domain finitely_supported_z();

  const Kind& kind() const { return kind_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&kind_);
  }

  bool contains(const Vector& v) const;
  /// Decides U ⊆ *this for U = other (exact on the implemented kinds; false
  /// when undecidable).
  bool includes(const Domain& other, const Space& space) const;
  std::string describe() const;

 private:
  explicit Domain(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// A positive partial functional (U, J).
struct PartialFunctional {
  Domain domain;
  Functional functional;
  std::string label;
};

/// Checks J is positive, defined on U and not identically zero there.
/// Throws InputError otherwise.
PartialFunctional make_partial(const Space& space, Domain domain, Functional functional, std::string label);

/// J(v) when v lies in the domain and J is defined there.
std::optional<Rational> try_eval(const PartialFunctional& p, const Vector& v);

/// Rényi order p1 ≺ p2: J2 vanishes on U1, checked on the generators of U1.
/// An undefined evaluation means "not ≺".
bool renyi_prec(const Space& space, const PartialFunctional& p1, const PartialFunctional& p2);

/// Finite chain, increasing for ≺ (back() is the ≺-greatest element).
struct Chain {
  Space space;
  std::vector<PartialFunctional> elements;
};

/// Sorts and validates; throws NotAChain on the first bad pair.
Chain validate_chain(const Space& space, std::vector<PartialFunctional> elements);

struct FullnessResult {
  bool full = false;
  std::optional<std::vector<Element>> witness;  // unhandled support set
  std::string method;
};

/// Exhaustive over subsets for finite point sets up to 20 points, structural
/// above that (nested domains) and for the density chain on Z.
FullnessResult check_fullness(const Chain& chain);

/// Index of the element handling w (in its domain, J(w) != 0), scanning from
/// the ≺-greatest; nullopt if none.
std::optional<std::size_t> handling_index(const Chain& chain, const Vector& w);

/// r(u, v) for the chain. Throws NotFullAt when no element handles u + v.
PriceValue eval_chain_pricing(const Chain& chain, const Vector& u, const Vector& v);

/// Ordered partition X_1..X_m of {0..n-1}; element k has domain the ideal of
/// 1_{X_k ∪ ... ∪ X_m} and J_k = the weights on X_k (default 1).
Chain lexicographic_chain(int n, const std::vector<std::vector<int>>& partition,
                          const std::optional<std::vector<Rational>>& weights = std::nullopt);
/// Elements (vectors supported in [-W, n], evaluation at n) for |n| <= W, on Z.
Chain rightmost_z_chain(std::int64_t window);
/// [(finitely supported, Counting), (whole, Density)] on Z.
Chain density_z_chain();

}  // namespace conemeans
