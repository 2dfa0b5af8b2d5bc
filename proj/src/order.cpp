#include "conemeans/order.hpp"

#include <algorithm>

#include "conemeans/errors.hpp"
#include "conemeans/simplex.hpp"

namespace conemeans {

std::optional<std::vector<Rational>> cone_coefficients(const PolyConeSpace& space, const std::vector<Rational>& v) {
  const std::size_t k = space.generators.size();
  RationalMatrix A(space.dim, std::vector<Rational>(k));
  for (int i = 0; i < space.dim; ++i)
    for (std::size_t j = 0; j < k; ++j) A[i][j] = space.generators[j][i];
  return find_nonnegative_solution(A, v);
}

bool cone_leq(const Vector& u, const Vector& v) {
  require_same_space(u, v);
  const Vector diff = v - u;
  if (auto pc = u.space().as<PolyConeSpace>()) return cone_coefficients(*pc, *diff.dense_values()).has_value();
  bool ok = true;
  diff.for_each_value([&](const Rational& q) { ok = ok && q >= 0; });
  return ok;
}

bool is_positive(const Vector& v) {
  if (auto pc = v.space().as<PolyConeSpace>()) return cone_coefficients(*pc, *v.dense_values()).has_value();
  bool ok = true;
  v.for_each_value([&](const Rational& q) { ok = ok && q >= 0; });
  return ok;
}

bool is_proper_cone(const Space& space) {
  auto pc = space.as<PolyConeSpace>();
  if (!pc) return true;
  // A line lies in the cone iff some nonzero generator has its negative in the cone.
  for (const auto& g : pc->generators) {
    if (std::all_of(g.begin(), g.end(), [](const Rational& q) { return q == 0; })) continue;
    std::vector<Rational> neg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
    if (cone_coefficients(*pc, neg)) return false;
  }
  return true;
}

namespace {

Vector combine(const std::vector<Vector>& gens, const std::vector<Rational>& coeffs, const Space& space) {
  Vector sum = Vector::zero(space);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (coeffs[i] != 0) sum = sum + gens[i] * coeffs[i];
  return sum;
}

}  // namespace

IdealMembership ideal_contains(const std::vector<Vector>& generators, const Vector& v) {
  for (const auto& a : generators) {
    require_same_space(a, v);
    if (!is_positive(a)) throw InputError("ideal generator is not positive: " + a.to_string());
  }
  if (generators.empty()) {
    if (!v.is_zero()) return {};
    return {true, IdealCertificate{{}, {}, Vector::zero(v.space())}};
  }
  const Space& space = v.space();
  if (auto pc = space.as<PolyConeSpace>()) {
    // variables: c (|A|), lambda (k), mu (k)
    //   A c - G lambda = v,  A c - G mu = -v
    const std::size_t na = generators.size();
    const std::size_t k = pc->generators.size();
    const auto dim = static_cast<std::size_t>(pc->dim);
    RationalMatrix M(2 * dim, std::vector<Rational>(na + 2 * k, Rational(0)));
    std::vector<Rational> rhs(2 * dim);
    const auto& vals = *v.dense_values();
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < na; ++j) {
        M[i][j] = (*generators[j].dense_values())[i];
        M[dim + i][j] = (*generators[j].dense_values())[i];
      }
      for (std::size_t j = 0; j < k; ++j) {
        M[i][na + j] = -pc->generators[j][i];
        M[dim + i][na + k + j] = -pc->generators[j][i];
      }
      rhs[i] = vals[i];
      rhs[dim + i] = -vals[i];
    }
    auto sol = find_nonnegative_solution(M, rhs);
    if (!sol) return {};
    std::vector<Rational> coeffs(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(na));
    Vector bound = combine(generators, coeffs, space);
    return {true, IdealCertificate{generators, coeffs, bound}};
  }

  // Coordinatewise: one common coefficient c = max |v(x)| / a(x) over supp v.
  Vector a = Vector::zero(space);
  for (const auto& g : generators) a = a + g;
  Rational c = 0;
  bool covered = true;
  auto visit = [&](const Rational& vx, const Rational& ax) {
    if (vx == 0) return;
    if (ax == 0) {
      covered = false;
      return;
    }
    Rational ratio = abs(vx) / ax;
    if (ratio > c) c = ratio;
  };
  if (v.periodic_data()) {
    // zip walks the core union plus one lcm window of each tail.
    a.zip(v, [&](const Rational& ax, const Rational& vx) {
      visit(vx, ax);
      return Rational(0);
    });
  } else {
    for (const auto& [k, vx] : *v.sparse_entries()) visit(vx, a.at(k));
  }
  if (!covered) return {};
  std::vector<Rational> coeffs(generators.size(), c);
  Vector bound = a * c;
  return {true, IdealCertificate{generators, coeffs, bound}};
}

bool replay_ideal_certificate(const IdealCertificate& cert, const Vector& v) {
  if (cert.generators.size() != cert.coefficients.size()) return false;
  for (const auto& c : cert.coefficients)
    if (c < 0) return false;
  for (const auto& g : cert.generators)
    if (g.space() != v.space() || !is_positive(g)) return false;
  Vector bound = combine(cert.generators, cert.coefficients, v.space());
  if (bound != cert.bound) return false;
  return cone_leq(v, bound) && cone_leq(-v, bound);
}

}  // namespace conemeans
