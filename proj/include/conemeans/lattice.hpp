#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "conemeans/pricing.hpp"

namespace conemeans {

/// Pointwise min and max. Throws UnsupportedSpace on PolyCone.
std::pair<Vector, Vector> meet_join(const Vector& u, const Vector& v);
Vector meet(const Vector& u, const Vector& v);
Vector join(const Vector& u, const Vector& v);
/// |u| = u ∨ (-u).
Vector abs(const Vector& u);

struct SelfMajorizing {
  bool self_majorizing = false;
  std::optional<Rational> lower_bound;  // least positive value
};
/// Step functions are self-majorizing with c = min positive value; 0 is not.
SelfMajorizing is_self_majorizing(const Vector& v);

struct BandProjection {
  Vector projection;  // u · 1_{supp v}
  Integer n_star;     // ceil(max u / c)
};
/// p_v(u), verified against u ∧ n v for n = n*, n*+1, n*+2 (DomainError if
/// the sequence has not stabilized, which would be a bug).
BandProjection band_projection(const Vector& v, const Vector& u);
/// u ∧ n v.
Vector meet_multiple(const Vector& u, const Vector& v, const Integer& n);

/// P(p_v(u) | v), extended to all of V_v by positive homogeneity.
Rational extend_cm_global(const ConditionalMean& P, const Vector& u, const Vector& v);

/// Rényi conditional probabilities on a finite ground set, |X| <= 12.
/// Subsets are bit masks; values are stored for A ⊆ B, B != ∅.
class CPTable {
 public:
  using Mask = std::uint32_t;
  static constexpr int kMaxGround = 12;

  explicit CPTable(int ground);

  /// P(A|B) = μ_k(A ∩ B) / μ_k(B) for the first μ_k with μ_k(B) > 0.
  /// Throws InputError if some B is charged by no measure.
  static CPTable from_measure_chain(int ground, const std::vector<std::vector<Rational>>& measures);

  int ground() const { return ground_; }
  /// P(A ∩ B | B).
  Rational get(Mask a, Mask b) const;
  void set(Mask a, Mask b, const Rational& value);
  const std::map<std::pair<Mask, Mask>, Rational>& values() const { return values_; }

  static std::vector<int> members(Mask m);
  static Mask mask_of(const std::vector<int>& members);

 private:
  int ground_;
  std::map<std::pair<Mask, Mask>, Rational> values_;
};

/// Additivity within each B, P(B|B) = 1, and P(A|B) P(B|C) = P(A|C) for
/// A ⊆ B ⊆ C.
Report cp_validate(const CPTable& table);

/// The step-function lift P''(u|v) = P'(u|A_v) / P'(v|A_v) with
/// P'(u|A) = Σ_t t P(u^-1(t) | A). Throws InputError on an invalid table.
MeanPtr cp_to_cm(const CPTable& table);

}  // namespace conemeans
