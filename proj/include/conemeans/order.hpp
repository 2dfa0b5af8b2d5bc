#pragma once

#include <optional>
#include <vector>

#include "conemeans/vector.hpp"

namespace conemeans {

/// u <= v in the space's order. Coordinatewise kinds compare pointwise; a
/// PolyCone decides membership of v - u in the generator cone exactly.
bool cone_leq(const Vector& u, const Vector& v);
bool is_positive(const Vector& v);

/// Membership of `v` in the cone spanned by the PolyCone generators, with
/// the nonnegative coefficients on success.
std::optional<std::vector<Rational>> cone_coefficients(const PolyConeSpace& space, const std::vector<Rational>& v);

/// C ∩ (-C) = {0} for the generator cone. Coordinatewise kinds are proper.
bool is_proper_cone(const Space& space);

/// Witness that ±v <= sum_i c_i a_i with c_i >= 0.
struct IdealCertificate {
  std::vector<Vector> generators;
  std::vector<Rational> coefficients;
  Vector bound;  // sum_i c_i a_i
};

struct IdealMembership {
  bool member = false;
  std::optional<IdealCertificate> certificate;
};

/// Decides v ∈ V_A for positive generators A. Coordinatewise kinds reduce to
/// support inclusion (one common coefficient max|v|/a on supp v suffices);
/// PolyCone uses exact feasibility. Throws InputError on a non-positive generator.
IdealMembership ideal_contains(const std::vector<Vector>& generators, const Vector& v);

/// Recomputes the bound from the coefficients and re-checks both inequalities.
bool replay_ideal_certificate(const IdealCertificate& cert, const Vector& v);

}  // namespace conemeans
