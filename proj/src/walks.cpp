#include "conemeans/walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include "conemeans/errors.hpp"

namespace conemeans {

std::size_t default_support_cap() {
  if (const char* env = std::getenv("CONEMEANS_SUPPORT_CAP")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

Measure::Measure(Group group, SparseEntries weights) : group_(std::move(group)) {
  for (const auto& [x, w] : weights)
    if (w < 0) throw InputError("measure weights must be nonnegative");
  std::erase_if(weights, [](const auto& kv) { return kv.second == 0; });
  weights_ = std::move(weights);
}

Measure Measure::dirac(const Group& group) { return dirac(group, group.identity()); }

Measure Measure::dirac(const Group& group, const Element& at) { return Measure(group, {{at, Rational(1)}}); }

Measure Measure::srw(const Group& group) {
  auto gens = group.generators();
  if (gens.empty()) return dirac(group);
  SparseEntries w;
  const Rational each(1, static_cast<unsigned long>(gens.size()));
  for (const auto& g : gens) w[g] += each;
  return Measure(group, std::move(w));
}

Measure Measure::lazy(const Group& group) {
  SparseEntries w;
  w[group.identity()] += Rational(1, 2);
  const Measure step = srw(group);
  for (const auto& [g, q] : step.weights()) w[g] += q / 2;
  return Measure(group, std::move(w));
}

Measure Measure::uniform(const Group& group) {
  auto elems = group.elements();
  SparseEntries w;
  const Rational each(1, static_cast<unsigned long>(elems.size()));
  for (const auto& g : elems) w[g] = each;
  return Measure(group, std::move(w));
}

Measure Measure::builtin(const Group& group, const std::string& name) {
  if (name == "srw") return srw(group);
  if (name == "lazy") return lazy(group);
  if (name == "uniform") return uniform(group);
  if (name == "dirac") return dirac(group);
  throw InputError("unknown builtin measure '" + name + "'");
}

Rational Measure::at(const Element& x) const {
  auto it = weights_.find(x);
  return it == weights_.end() ? Rational(0) : it->second;
}

Rational Measure::total() const {
  Rational s = 0;
  for (const auto& [_, w] : weights_) s += w;
  return s;
}

bool Measure::is_symmetric() const {
  for (const auto& [x, w] : weights_)
    if (at(group_.inv(x)) != w) return false;
  return true;
}

namespace {

using ScaledMap = std::unordered_map<Element, Integer, ElementHash>;

// μ with weights a_s / D for integers a_s.
struct ScaledStep {
  std::vector<std::pair<Element, Integer>> atoms;
  Integer den;
};

ScaledStep scale(const Measure& mu) {
  ScaledStep s;
  s.den = 1;
  for (const auto& [_, w] : mu.weights()) mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), w.get_den_mpz_t());
  for (const auto& [x, w] : mu.weights()) s.atoms.emplace_back(x, Integer(w.get_num() * (s.den / w.get_den())));
  return s;
}

// next(y s) += cur(y) a_s: the numerators of α ∗ μ over den(α) D.
ScaledMap step_right(const Group& g, const ScaledMap& cur, const ScaledStep& mu, std::size_t cap) {
  ScaledMap next;
  next.reserve(cur.size() * 2);
  for (const auto& [y, c] : cur) {
    for (const auto& [s, a] : mu.atoms) {
      auto& slot = next[g.mul(y, s)];
      slot += c * a;
    }
    if (next.size() > cap) throw SupportCapExceeded(next.size(), cap);
  }
  std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
  return next;
}

// Visits μ^{*n} as numerators over D^n for n = 0..N.
template <class F>
void for_each_power(const Measure& mu, unsigned N, std::size_t cap, F&& visit) {
  const ScaledStep st = scale(mu);
  ScaledMap cur{{mu.group().identity(), Integer(1)}};
  Integer den = 1;
  visit(0u, cur, den);
  for (unsigned n = 1; n <= N; ++n) {
    cur = step_right(mu.group(), cur, st, cap);
    den *= st.den;
    visit(n, cur, den);
  }
}

SparseEntries to_sorted(const ScaledMap& m, const Integer& den) {
  SparseEntries out;
  for (const auto& [x, c] : m) {
    Rational q(c, den);
    q.canonicalize();
    out.emplace(x, q);
  }
  return out;
}

using RationalMap = std::unordered_map<Element, Rational, ElementHash>;

RationalMap green_map(const Measure& mu, const Rational& z, unsigned N, std::size_t cap) {
  RationalMap out;
  Rational zn = 1;
  for_each_power(mu, N, cap, [&](unsigned n, const ScaledMap& cur, const Integer& den) {
    if (n > 0) zn *= z;
    for (const auto& [x, c] : cur) {
      Rational q(c, den);
      q.canonicalize();
      out[x] += zn * q;
    }
  });
  return out;
}

// (μ ∗ f)(x) = Σ_s μ(s) f(s^-1 x): f's mass at y moves to s y.
RationalMap left_convolve(const Measure& mu, const RationalMap& f) {
  RationalMap out;
  out.reserve(f.size() * 2);
  const auto& g = mu.group();
  for (const auto& [y, q] : f)
    for (const auto& [s, w] : mu.weights()) out[g.mul(s, y)] += w * q;
  return out;
}

Rational lookup(const RationalMap& m, const Element& x) {
  auto it = m.find(x);
  return it == m.end() ? Rational(0) : it->second;
}

bool identity_holds(const Measure& mu, const Rational& z, const RationalMap& gn, const RationalMap& gnext,
                    std::size_t* points) {
  RationalMap lhs = left_convolve(mu, gn);
  for (auto& [_, q] : lhs) q *= z;
  lhs[mu.group().identity()] += 1;
  std::size_t count = 0;
  bool ok = true;
  for (const auto& [x, q] : lhs) {
    ++count;
    ok = ok && q == lookup(gnext, x);
  }
  for (const auto& [x, q] : gnext) {
    if (lhs.count(x)) continue;
    ++count;
    ok = ok && q == 0;
  }
  if (points) *points = count;
  return ok;
}

void require_symmetric_probability(const Measure& mu) {
  if (!mu.is_probability()) throw PreconditionFailed("measure is not a probability");
  if (!mu.is_symmetric()) throw PreconditionFailed("measure is not symmetric");
}

}  // namespace

Measure convolve(const Measure& mu, const Measure& nu, std::size_t cap) {
  if (mu.group() != nu.group()) throw SpaceMismatch("convolution of measures on different groups");
  std::unordered_map<Element, Rational, ElementHash> out;
  const auto& g = mu.group();
  for (const auto& [s, a] : mu.weights()) {
    for (const auto& [t, b] : nu.weights()) out[g.mul(s, t)] += a * b;
    if (out.size() > cap) throw SupportCapExceeded(out.size(), cap);
  }
  return Measure(g, SparseEntries(out.begin(), out.end()));
}

Measure conv_power(const Measure& mu, unsigned n, std::size_t cap) {
  if (!mu.is_probability()) throw InputError("convolution powers need a probability measure");
  SparseEntries out;
  for_each_power(mu, n, cap, [&](unsigned k, const ScaledMap& cur, const Integer& den) {
    if (k == n) out = to_sorted(cur, den);
  });
  return Measure(mu.group(), std::move(out));
}

Vector mu_apply(const Measure& mu, const Vector& v) {
  const Action action = Action::left_translation(v.space());
  if (action.group() != mu.group()) throw SpaceMismatch("measure group does not act on " + v.space().describe());
  Vector out = Vector::zero(v.space());
  for (const auto& [g, w] : mu.weights()) out = out + action.apply(g, v) * w;
  return out;
}

std::vector<SpectralBound> spectral_radius_bounds(const Measure& mu, unsigned N, std::size_t cap) {
  require_symmetric_probability(mu);
  std::vector<SpectralBound> out;
  for_each_power(mu, N, cap, [&](unsigned n, const ScaledMap& cur, const Integer& den) {
    if (n == 0) return;
    Integer sq = 0;
    for (const auto& [_, c] : cur) sq += c * c;
    Rational p(sq, Integer(den * den));
    p.canonicalize();
    SpectralBound b{n, p, 0.0};
    b.lower = std::pow(to_double(p), 1.0 / (2.0 * n));
    out.push_back(std::move(b));
  });
  return out;
}

bool strictly_increasing(const std::vector<SpectralBound>& bounds) {
  for (std::size_t i = 1; i < bounds.size(); ++i) {
    const auto m = bounds[i - 1].n;
    const auto n = bounds[i].n;
    if (!(pow(bounds[i - 1].p2n, n) < pow(bounds[i].p2n, m))) return false;
  }
  return true;
}

bool bounded_by(const std::vector<SpectralBound>& bounds, const Rational& rho) {
  for (const auto& b : bounds)
    if (b.p2n > pow(rho, 2 * b.n)) return false;
  return true;
}

Rational kesten_upper(int k, long den) {
  if (k < 1 || den < 1) throw InputError("kesten_upper needs k >= 1 and a positive denominator");
  Integer t = Integer(den) * den * (2 * k - 1);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  if (s * s < t) s += 1;
  Integer m;
  mpz_cdiv_q_ui(m.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(k));
  Rational q(m, Integer(den));
  q.canonicalize();
  return q;
}

Vector green_truncated(const Measure& mu, const Rational& z, unsigned N, std::size_t cap) {
  if (!mu.is_probability()) throw InputError("Green function needs a probability measure");
  RationalMap g = green_map(mu, z, N, cap);
  SparseEntries e(g.begin(), g.end());
  return Vector::sparse(Space::group(mu.group()), std::move(e));
}

GreenIdentity green_identity_check(const Measure& mu, const Rational& z, unsigned N, std::size_t cap) {
  RationalMap gn = green_map(mu, z, N, cap);
  RationalMap gnext = green_map(mu, z, N + 1, cap);
  GreenIdentity out;
  out.holds = identity_holds(mu, z, gn, gnext, &out.points);
  return out;
}

bool green_identity_holds(const Measure& mu, const Rational& z, const Vector& green_n, const Vector& green_next) {
  const auto* a = green_n.sparse_entries();
  const auto* b = green_next.sparse_entries();
  if (!a || !b) throw SpaceMismatch("Green vectors live on a group space");
  RationalMap gn(a->begin(), a->end());
  RationalMap gnext(b->begin(), b->end());
  return identity_holds(mu, z, gn, gnext, nullptr);
}

ObstructionCertificate obstruction_certificate(const Measure& mu, const Rational& z, const Rational& rho_upper,
                                               unsigned N, std::size_t cap) {
  require_symmetric_probability(mu);
  if (z <= 1) throw PreconditionFailed("z must exceed 1, got " + to_string(z));
  if (rho_upper <= 0) throw PreconditionFailed("rho_upper must be positive");
  ObstructionCertificate c;
  c.group = mu.group().spec();
  c.measure = mu.weights();
  c.z = z;
  c.rho_upper = rho_upper;
  c.N = N;
  c.z_rho = z * rho_upper;
  if (c.z_rho >= 1) throw PreconditionFailed("z * rho_upper = " + to_string(c.z_rho) + " is not below 1");
  c.geometric_bound = 1 / (1 - c.z_rho);

  RationalMap gn;
  RationalMap gnext;
  Rational zn = 1;
  Rational rn = 1;
  c.decay_holds = true;
  c.lower_bounds_hold = true;
  for_each_power(mu, N + 1, cap, [&](unsigned n, const ScaledMap& cur, const Integer& den) {
    if (n > 0) {
      zn *= z;
      rn *= rho_upper;
    }
    Integer sq = 0;
    Integer max_c = 0;
    for (const auto& [x, k] : cur) {
      Rational q(k, den);
      q.canonicalize();
      const Rational term = zn * q;
      if (n <= N) gn[x] += term;
      gnext[x] += term;
      if (k > max_c) max_c = k;
      sq += k * k;
    }
    if (n <= N) {
      Rational peak(max_c, den);
      peak.canonicalize();
      if (peak > rn) c.decay_holds = false;
      if (2 * n <= N) {
        // p_2n = Σ μ^{*n}(x)^2 by symmetry
        Rational p(sq, Integer(den * den));
        p.canonicalize();
        if (p > rn * rn) c.lower_bounds_hold = false;
      }
    }
  });
  c.max_green = 0;
  for (const auto& [_, q] : gn)
    if (q > c.max_green) c.max_green = q;
  c.green_points = gn.size();
  c.identity_holds = identity_holds(mu, z, gn, gnext, &c.identity_points);

  if (!c.decay_holds)
    throw PreconditionFailed("mu^{*n}(x) exceeds rho_upper^n for some n <= " + std::to_string(N) +
                             ": rho_upper is not an upper bound for the spectral radius");
  if (!c.lower_bounds_hold)
    throw PreconditionFailed("a return-probability lower bound exceeds rho_upper");
  if (c.max_green > c.geometric_bound) throw PreconditionFailed("truncated Green function exceeds the geometric bound");
  if (!c.identity_holds) throw PreconditionFailed("Green identity failed");
  c.contradiction = "a mu-stationary pricing r would give 1 = r(G, G) = r(mu*G, G) <= 1/z = " + to_string(1 / z) +
                    " < 1, since G_z is bounded by " + to_string(c.geometric_bound) + " and z*rho_upper = " +
                    to_string(c.z_rho) + " < 1";
  return c;
}

bool replay_obstruction(const ObstructionCertificate& cert, std::size_t cap) {
  try {
    const Measure mu(Group::parse(cert.group), cert.measure);
    ObstructionCertificate again = obstruction_certificate(mu, cert.z, cert.rho_upper, cert.N, cap);
    return again.z_rho == cert.z_rho && again.geometric_bound == cert.geometric_bound &&
           again.max_green == cert.max_green && again.green_points == cert.green_points &&
           again.identity_holds == cert.identity_holds && again.identity_points == cert.identity_points &&
           again.decay_holds == cert.decay_holds && again.lower_bounds_hold == cert.lower_bounds_hold &&
           again.contradiction == cert.contradiction;
  } catch (const Error&) {
    return false;
  }
}

Report harmonic_from_functional(const PartialFunctional& J, const Action& action, const Vector& v,
                                const std::vector<Element>& probes, const Measure& mu, const Rational& t) {
  if (action.group() != mu.group()) throw SpaceMismatch("measure and action use different groups");
  const Group& G = action.group();
  auto h = [&](const Element& g) {
    const Vector gv = action.apply(g, v);
    auto val = try_eval(J, gv);
    if (!val) throw DomainError("translate " + G.format(g) + "·v leaves the domain of " + J.label);
    return *val;
  };
  Report r;
  r.subject = "harmonic h(g) = J(gv), t = " + to_string(t);
  auto& c = r.add("mu*h = t h");
  for (const auto& g : probes) {
    Rational lhs = 0;
    for (const auto& [s, w] : mu.weights()) lhs += w * h(G.mul(G.inv(s), g));
    const Rational rhs = t * h(g);
    ++c.checked;
    if (lhs != rhs) c.fail("g = " + G.format(g) + ": (mu*h)(g) = " + to_string(lhs) + ", t h(g) = " + to_string(rhs));
  }
  return r;
}

}  // namespace conemeans
