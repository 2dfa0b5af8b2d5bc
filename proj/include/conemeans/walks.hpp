#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "conemeans/action.hpp"
#include "conemeans/chains.hpp"
#include "conemeans/group.hpp"
#include "conemeans/report.hpp"
#include "conemeans/vector.hpp"

namespace conemeans {

/// Default cap on convolution supports; CONEMEANS_SUPPORT_CAP overrides it.
std::size_t default_support_cap();

/// Finitely supported nonnegative rational weights on a group.
class Measure {
 public:
  Measure(Group group, SparseEntries weights);

  static Measure dirac(const Group& group);
  static Measure dirac(const Group& group, const Element& at);
  /// Uniform on the group's symmetric generating set.
  static Measure srw(const Group& group);
  /// (δ_e + srw) / 2.
  static Measure lazy(const Group& group);
  /// Uniform on a finite group.
  static Measure uniform(const Group& group);
  /// "srw", "lazy", "uniform", "dirac".
  static Measure builtin(const Group& group, const std::string& name);

  const Group& group() const { return group_; }
  const SparseEntries& weights() const { return weights_; }
  Rational at(const Element& x) const;
  Rational total() const;
  bool is_probability() const { return total() == 1; }
  bool is_symmetric() const;
  std::size_t support_size() const { return weights_.size(); }

  friend bool operator==(const Measure& a, const Measure& b) {
    return a.group_ == b.group_ && a.weights_ == b.weights_;
  }

 private:
  Group group_;
  SparseEntries weights_;
};

/// (μ∗ν)(x) = Σ_s μ(s) ν(s^-1 x).
Measure convolve(const Measure& mu, const Measure& nu, std::size_t cap = default_support_cap());
Measure conv_power(const Measure& mu, unsigned n, std::size_t cap = default_support_cap());

/// (μ∗v)(x) = Σ_g μ(g) (g v)(x) under left translation (group space, or Z
/// for z:1).
Vector mu_apply(const Measure& mu, const Vector& v);

struct SpectralBound {
  unsigned n = 0;
  Rational p2n;         // μ^{*2n}(e)
  double lower = 0.0;   // p2n^(1/2n), rendered only
};

/// p_2n = Σ_x μ^{*n}(x)^2 for n = 1..N (μ symmetric probability).
std::vector<SpectralBound> spectral_radius_bounds(const Measure& mu, unsigned N,
                                                  std::size_t cap = default_support_cap());
/// p_{2m}^(1/2m) < p_{2n}^(1/2n) for consecutive terms, decided by cross-powering.
bool strictly_increasing(const std::vector<SpectralBound>& bounds);
/// p_2n^(1/2n) <= rho for every term, decided as p_2n <= rho^(2n).
bool bounded_by(const std::vector<SpectralBound>& bounds, const Rational& rho);

/// Smallest m / den >= sqrt(2k - 1) / k, the simple random walk value on F_k.
Rational kesten_upper(int k, long den = 18000);

/// Σ_{n<=N} z^n μ^{*n} as a vector on the group space.
Vector green_truncated(const Measure& mu, const Rational& z, unsigned N, std::size_t cap = default_support_cap());

struct GreenIdentity {
  bool holds = false;
  std::size_t points = 0;
};
/// z (μ ∗ G_N) + δ_e = G_{N+1} at every point of the combined supports.
GreenIdentity green_identity_check(const Measure& mu, const Rational& z, unsigned N,
                                   std::size_t cap = default_support_cap());
bool green_identity_holds(const Measure& mu, const Rational& z, const Vector& green_n, const Vector& green_next);

struct ObstructionCertificate {
  std::string group;
  SparseEntries measure;
  Rational z;
  Rational rho_upper;
  unsigned N = 0;
  Rational z_rho;
  Rational geometric_bound;  // 1 / (1 - z rho)
  Rational max_green;
  std::size_t green_points = 0;
  bool identity_holds = false;
  std::size_t identity_points = 0;
  bool decay_holds = false;        // μ^{*n}(x) <= rho^n, n <= N
  bool lower_bounds_hold = false;  // p_2n <= rho^2n, 2n <= N
  std::string contradiction;
};

/// Throws PreconditionFailed unless μ is a symmetric probability, z > 1,
/// z rho < 1, and the decay and geometric bounds hold exactly.
ObstructionCertificate obstruction_certificate(const Measure& mu, const Rational& z, const Rational& rho_upper,
                                               unsigned N, std::size_t cap = default_support_cap());
/// Recomputes every field from the stored inputs.
bool replay_obstruction(const ObstructionCertificate& cert, std::size_t cap = default_support_cap());

/// Checks Σ_s μ(s) h(s^-1 g) = t h(g) at the probes, for h(g) = J(gv).
/// Throws DomainError when some translate leaves J's domain.
Report harmonic_from_functional(const PartialFunctional& J, const Action& action, const Vector& v,
                                const std::vector<Element>& probes, const Measure& mu, const Rational& t);

}  // namespace conemeans
