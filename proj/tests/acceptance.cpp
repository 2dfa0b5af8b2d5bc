// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <gmpxx.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "conemeans/action.hpp"
#include "conemeans/errors.hpp"
#include "conemeans/invariant.hpp"
#include "conemeans/lattice.hpp"
#include "conemeans/pricing.hpp"
#include "conemeans/properties.hpp"
#include "conemeans/refutation.hpp"
#include "conemeans/serialize.hpp"
#include "conemeans/walks.hpp"

using namespace conemeans;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  void require_report(const Report& r) {
    for (const auto& c : r.checks) require(c.passed, r.subject + " / " + c.name + ": " + c.witness);
  }
};

SamplerConfig config(std::uint64_t seed, std::size_t count) {
  SamplerConfig c;
  c.seed = seed;
  c.count = count;
  return c;
}

Rational q(long p, long d = 1) { return make_rational(p, d); }

Vector zind(std::vector<std::int64_t> pts) { return z::indicator(pts); }

Vector finite_indicator(int n, std::uint32_t mask) {
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) v[static_cast<std::size_t>(i)] = 1;
  return Vector::coords(n, v);
}

PricingPtr counting_quotient(int n) {
  SparseEntries w;
  for (int i = 0; i < n; ++i) w[{i}] = 1;
  return faithful_quotient(Space::finite(n), Functional::weighted(w));
}

CPTable three_block_table() {
  return CPTable::from_measure_chain(4, {{q(1, 3), q(2, 3), q(0), q(0)},
                                         {q(0), q(0), q(1), q(0)},
                                         {q(0), q(0), q(0), q(1)}});
}

// ---- criteria ----

Outcome axiom_suite() {
  Outcome o;
  std::size_t vp2_checked = 0, vp2_skipped = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::vector<int>> blocks;
    for (int i = n - 1; i >= 0; i -= 2) {
      blocks.push_back({i});
      if (i > 0) blocks.back().push_back(i - 1);
    }
    const Report r = check_axioms(chain_pricing(lexicographic_chain(n, blocks)), config(7 + n, 1000));
    o.require_report(r);
    vp2_checked += r.find("VP2")->checked;
    vp2_skipped += r.find("VP2")->skipped;
  }
  const double rate = static_cast<double>(vp2_skipped) / static_cast<double>(vp2_checked + vp2_skipped);
  o.require(rate < 0.05, "VP2 skip rate " + std::to_string(rate));
  return o;
}

Outcome bijection() {
  Outcome o;
  const std::vector<PricingPtr> backends{chain_pricing(lexicographic_chain(6, {{0, 1}, {2, 3}, {4, 5}})),
                                         chain_pricing(density_z_chain()), counting_quotient(5),
                                         vp_from_cm(cp_to_cm(three_block_table()))};
  for (const auto& r : backends) {
    o.require_report(check_roundtrip(r, config(101, 500)));
    o.require_report(check_roundtrip(cm_from_vp(r), config(102, 500)));
  }
  return o;
}

Outcome chain_formula() {
  Outcome o;
  struct Case {
    Chain chain;
    std::function<Vector(std::mt19937_64&)> draw;
  };
  auto small = [](std::mt19937_64& rng) {
    std::vector<Rational> core(9, Rational(0));
    for (auto& x : core)
      if (rng() % 3 == 0) x = make_rational(static_cast<long>(1 + rng() % 9), static_cast<long>(1 + rng() % 4));
    return z::make({Rational(0)}, -4, core, {Rational(0)});
  };
  std::vector<Case> cases;
  for (const auto& chain : {lexicographic_chain(6, {{5}, {0, 2}, {1, 3, 4}}), density_z_chain()}) {
    auto sampler = std::make_shared<Sampler>(chain.space, config(103, 1));
    cases.push_back({chain, [sampler](std::mt19937_64&) { return sampler->positive_vector(); }});
  }
  cases.push_back({rightmost_z_chain(6), small});
  std::mt19937_64 rng(104);
  for (const auto& c : cases) {
    std::size_t hits = 0;
    for (std::size_t attempt = 0; hits < 500 && attempt < 200000; ++attempt) {
      const Vector u = c.draw(rng);
      const Vector v = c.draw(rng);
      for (const auto& J : c.chain.elements) {
        auto ju = try_eval(J, u);
        auto jv = try_eval(J, v);
        if (!ju || !jv || *jv == 0) continue;
        ++hits;
        const PriceValue got = eval_chain_pricing(c.chain, u, v);
        o.require(got == PriceValue(*ju / *jv), J.label + ": r(" + u.to_string() + ", " + v.to_string() + ") = " +
                                                    got.to_string() + ", J(u)/J(v) = " + to_string(*ju / *jv));
      }
    }
    o.require(hits >= 500, "only " + std::to_string(hits) + " in-domain samples");
  }
  return o;
}

Outcome invariance_z() {
  Outcome o;
  const PricingPtr r = chain_pricing(density_z_chain());
  Sampler s(r->space(), config(105, 200));
  std::vector<Vector> probes;
  for (int i = 0; i < 200; ++i) probes.push_back(s.nonzero_positive_vector());
  const Report rep = check_invariance(r, Action::parse("shift"), probe_elements(Group::zpower(1), 10), probes);
  o.require_report(rep);
  for (const char* n : {"def-inv (i)", "def-inv (ii)", "def-inv (iii)", "def-inv (iv)", "def-inv (v)"})
    o.require(rep.find(n)->checked > 0 && rep.find(n)->skipped == 0, std::string(n) + " was not fully evaluated");
  o.require(r->eval(z::delta(0), z::constant(1)) == PriceValue(0L), "r(delta_0, 1_Z) != 0");
  o.require(r->eval(z::periodic({Rational(1), Rational(0)}), z::constant(1)) == PriceValue(q(1, 2)),
            "r(1_even, 1_Z) != 1/2");
  return o;
}

Outcome stationarity_z() {
  Outcome o;
  const PricingPtr r = chain_pricing(density_z_chain());
  Sampler s(r->space(), config(106, 200));
  std::vector<Vector> probes;
  for (int i = 0; i < 200; ++i) probes.push_back(s.nonzero_positive_vector());
  for (const auto& mu : {Measure::srw(Group::zpower(1)), Measure::lazy(Group::zpower(1))}) {
    const Report rep = check_stationarity(r, mu, probes);
    o.require_report(rep);
    o.require(rep.checks.front().checked > 0 && rep.checks.front().skipped == 0, "stationarity skipped probes");
  }
  return o;
}

Outcome equivariance_not_invariance() {
  Outcome o;
  const PricingPtr r = chain_pricing(rightmost_z_chain(20));
  std::mt19937_64 rng(107);
  std::vector<Vector> probes;
  while (probes.size() < 200) {
    std::vector<Rational> core(9);
    bool nonzero = false;
    for (auto& x : core) {
      x = rng() % 3 ? Rational(0) : make_rational(static_cast<long>(1 + rng() % 9), static_cast<long>(1 + rng() % 4));
      nonzero = nonzero || x != 0;
    }
    if (nonzero) probes.push_back(z::make({Rational(0)}, -4, core, {Rational(0)}));
  }
  const Action shift = Action::parse("shift");
  const Report eq = check_equivariance(r, shift, probe_elements(Group::zpower(1), 5), probes);
  o.require_report(eq);
  o.require(eq.checks.front().skipped == 0 && eq.checks.front().checked >= 200, "equivariance skipped samples");
  const Report inv = check_invariance(r, shift, {{1}}, {zind({0}), zind({0, 1})});
  o.require(!inv.passed(), "rightmost pricing passed invariance");
  o.require(r->eval(zind({0}), zind({0, 1})) == PriceValue(0L), "r(1_{0}, 1_{0,1}) != 0");
  o.require(r->eval(shift.apply({1}, zind({0})), zind({0, 1})) == PriceValue(1L), "r(1_{1}, 1_{0,1}) != 1");
  return o;
}

Outcome finite_builder() {
  Outcome o;
  std::vector<Group> groups;
  for (int qn = 2; qn <= 12; ++qn) groups.push_back(Group::cyclic(qn));
  groups.push_back(Group::symmetric(3));
  for (const auto& g : groups) {
    const Action a = Action::regular(g);
    const auto pts = g.elements();
    std::vector<Vector> F;
    for (std::uint32_t m = 1; m < (1u << pts.size()); ++m) {
      SparseEntries e;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (m & (1u << i)) e[pts[i]] = 1;
      F.push_back(Vector::sparse(a.space(), e));
    }
    const InvariantChain built = build_invariant_chain(a, F, FunctionalSupplier::builtin_invariant());
    o.require_report(check_invariant_chain(a, F, built));
    o.require_report(indicator_invariance(built.chain, a));
  }
  return o;
}

Rational central_binomial_over_4n(unsigned n) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * n, n);
  mpz_class d = 1;
  d <<= 2 * n;
  Rational r(c, d);
  r.canonicalize();
  return r;
}

Outcome walk_numerics() {
  Outcome o;
  const Measure z = Measure::srw(Group::zpower(1));
  o.require(conv_power(z, 2).at({0}) == q(1, 2), "mu^2(0) != 1/2");
  o.require(conv_power(z, 4).at({0}) == q(3, 8), "mu^4(0) != 3/8");
  o.require(conv_power(z, 24).at({0}) == central_binomial_over_4n(12), "mu^24(0) != C(24,12)/2^24");

  const auto bz = spectral_radius_bounds(z, 12);
  o.require(strictly_increasing(bz), "Z bounds not strictly increasing");
  o.require(bz.back().lower >= 0.92, "Z bound at n = 12 below 0.92");
  const auto b6 = spectral_radius_bounds(Measure::srw(Group::cyclic(6)), 30);
  o.require(strictly_increasing(b6), "Z/6 bounds not strictly increasing");
  o.require(b6.back().lower >= 0.95, "Z/6 bound at n = 30 below 0.95");
  // Exact decision of lower >= 0.95: p_60 >= (19/20)^60.
  o.require(b6.back().p2n >= pow(q(19, 20), 60), "Z/6 exact bound below 19/20");
  const auto bf = spectral_radius_bounds(Measure::srw(Group::free(2)), 12);
  o.require(strictly_increasing(bf), "F_2 bounds not strictly increasing");
  o.require(bounded_by(bf, q(15589, 18000)), "F_2 bound exceeds 15589/18000");
  return o;
}

Outcome obstruction() {
  Outcome o;
  const ObstructionCertificate c =
      obstruction_certificate(Measure::srw(Group::free(2)), q(9, 8), kesten_upper(2), 10);
  o.require(c.identity_holds && c.identity_points > 0, "Green identity failed");
  o.require(c.geometric_bound == Rational(1 / (1 - q(9, 8) * kesten_upper(2))), "geometric bound is not 1/(1 - z rho)");
  o.require(c.max_green <= c.geometric_bound, "Green function exceeds the geometric bound");
  o.require(replay_obstruction(c), "certificate does not replay");
  o.require(replay_obstruction(obstruction_from_json(Json::parse(to_json(c).dump()))),
            "serialized certificate does not replay");
  return o;
}

Outcome hyper_archimedean() {
  Outcome o;
  std::mt19937_64 rng(110);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    // Step functions take few distinct values.
    const Rational levels[] = {0, q(1, 3), q(1, 2), 1, 2, q(7, 2)};
    std::vector<Rational> u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (auto& x : u) x = levels[rng() % 6];
    for (auto& x : v) x = levels[rng() % 6];
    const Vector vu = Vector::coords(n, u), vv = Vector::coords(n, v);
    if (vv.is_zero()) continue;
    const auto b = band_projection(vv, vu);
    for (int k = 0; k <= 2; ++k)
      o.require(meet_multiple(vu, vv, b.n_star + k) == b.projection,
                "u ^ n v not stable at n* + " + std::to_string(k) + " for u = " + vu.to_string());
  }
  const MeanPtr P = cm_from_vp(chain_pricing(lexicographic_chain(5, {{2}, {0, 4}, {1, 3}})));
  for (std::uint32_t b = 1; b < 32; ++b)
    for (std::uint32_t a = 1; a < 32; ++a)
      o.require(extend_cm_global(*P, finite_indicator(5, a), finite_indicator(5, b)) ==
                    P->eval(finite_indicator(5, a & b), finite_indicator(5, b)),
                "P(1_A|1_B) != P(1_{A^B}|1_B)");
  return o;
}

Outcome cp_lift() {
  Outcome o;
  const CPTable t = three_block_table();
  o.require_report(cp_validate(t));
  const MeanPtr P = cp_to_cm(t);
  for (std::uint32_t b = 1; b < 16; ++b)
    for (std::uint32_t a = 0; a < 16; ++a)
      if ((a & b) == a)
        o.require(P->eval(finite_indicator(4, a), finite_indicator(4, b)) == t.get(a, b), "lift differs from the table");
  return o;
}

Outcome negative_result() {
  Outcome o;
  std::vector<RefutationCertificate> certs;
  for (int qn : {2, 3, 4, 6}) {
    certs.push_back(refute_signed_invariant(Group::cyclic(qn), {1}));
    o.require(certs.back().contradiction == std::to_string(qn) + " = 0", "Z/" + std::to_string(qn) + " ends in " + certs.back().contradiction);
  }
  certs.push_back(refute_signed_invariant(Group::zpower(1), {1}));
  o.require(certs.back().contradiction == "1 = −1", "Z ends in " + certs.back().contradiction);
  for (const auto& c : certs) {
    const auto problem = replay_refutation(c);
    o.require(!problem, "replay failed: " + problem.value_or(""));
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
      auto bad = c;
      bad.steps[i].value += 1;
      o.require(replay_refutation(bad).has_value(), "corrupted step " + std::to_string(i) + " accepted");
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"axiom suite (VP1-VP8, CM1-CM3) on lexicographic chains", 10, axiom_suite},
      {"VP/CM bijection", 5, bijection},
      {"chain formula r = J(u)/J(v)", 30, chain_formula},
      {"invariance on Z (density chain)", 10, invariance_z},
      {"stationarity on Z (SRW, lazy)", 30, stationarity_z},
      {"equivariance without invariance (rightmost chain)", 30, equivariance_not_invariance},
      {"finite-group invariant builder", 10, finite_builder},
      {"random-walk numerics", 60, walk_numerics},
      {"obstruction certificate on F_2", 30, obstruction},
      {"hyper-Archimedean extension", 30, hyper_archimedean},
      {"CP lift", 30, cp_lift},
      {"negative result certificates", 30, negative_result},
  };
  int failures = 0;
  int index = 0;
  double total = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total += secs;
    if (o.ok && secs > c.limit_seconds) {
      o.ok = false;
      std::ostringstream d;
      d << "runtime limit " << c.limit_seconds << " s exceeded";
      o.detail = d.str();
    }
    std::printf("%s %2d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", index, c.name, secs, o.ok ? "" : ": ",
                o.detail.c_str());
    if (!o.ok) ++failures;
  }
  std::printf("%d/%d criteria passed in %.2f s\n", index - failures, index, total);
  return failures ? 1 : 0;
}
