#pragma once

#include <optional>
#include <vector>

#include "conemeans/rational.hpp"

namespace conemeans {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Finds x >= 0 with A x = b, or reports infeasibility, by a two-phase-I
/// simplex over exact rationals with Bland's anti-cycling rule. `A` is
/// row-major with every row of equal length.
std::optional<std::vector<Rational>> find_nonnegative_solution(const RationalMatrix& A,
                                                               const std::vector<Rational>& b);

}  // namespace conemeans
