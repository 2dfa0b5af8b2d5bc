#include "helpers.hpp"

#include "conemeans/action.hpp"
#include "conemeans/errors.hpp"
#include "conemeans/invariant.hpp"
#include "conemeans/pricing.hpp"
#include "conemeans/properties.hpp"

using namespace conemeans;
using namespace conemeans::test;

namespace {

std::vector<Vector> indicators(const Space& s, const std::vector<Element>& pts) {
  std::vector<Vector> out;
  for (std::uint32_t m = 1; m < (1u << pts.size()); ++m) {
    SparseEntries e;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (m & (1u << i)) e[pts[i]] = 1;
    out.push_back(Vector::sparse(s, e));
  }
  return out;
}

}  // namespace

TEST_SUITE("invariant_builder") {
  TEST_CASE("orbit ideal generators") {
    const Group c4 = Group::cyclic(4);
    const Action reg = Action::regular(c4);
    const Space s = reg.space();
    CHECK(orbit_ideal_generators(reg, Vector::delta(s, {0}), 0).size() == 4);
    const Action shift = Action::parse("shift");
    const auto gens = orbit_ideal_generators(shift, z::delta(0), 3);
    REQUIRE(gens.size() == 7);
    for (int k = -3; k <= 3; ++k) CHECK(std::find(gens.begin(), gens.end(), z::delta(k)) != gens.end());
    CHECK(orbit_ideal_generators(shift, z::constant(1), 3) == std::vector<Vector>{z::constant(1)});
  }

  TEST_CASE("builtin supplier") {
    const Group c6 = Group::cyclic(6);
    const Action reg = Action::regular(c6);
    const auto s = FunctionalSupplier::builtin_invariant();
    const Vector d0 = Vector::delta(reg.space(), {0});
    const PartialFunctional p = supply_functional(s, reg, d0);
    CHECK(*try_eval(p, d0) == 1);
    CHECK(*try_eval(p, Vector::delta(reg.space(), {3})) == 1);

    const Action shift = Action::parse("shift");
    const PartialFunctional pe = supply_functional(s, shift, z_even());
    CHECK(pe.functional.as<DensityFunctional>());
    CHECK(*try_eval(pe, z_even()) == q(1, 2));
    const PartialFunctional pf = supply_functional(s, shift, z::delta(0) + z::delta(7));
    CHECK(pf.functional.as<CountingFunctional>());
    CHECK(*try_eval(pf, z::delta(0) + z::delta(7)) == 2);
  }

  TEST_CASE("user suppliers are validated") {
    const Group c4 = Group::cyclic(4);
    const Action reg = Action::regular(c4);
    FunctionalSupplier bad;
    bad.user = [](const Action& a, const Vector&) -> std::optional<PartialFunctional> {
      return make_partial(a.space(), Domain::whole(), Functional::weighted({{{0}, q(1)}, {{1}, q(2)}}), "skewed");
    };
    CHECK_THROWS_AS(supply_functional(bad, reg, Vector::delta(reg.space(), {0})), SupplierContractViolation);
    FunctionalSupplier declines;
    declines.user = [](const Action&, const Vector&) -> std::optional<PartialFunctional> { return std::nullopt; };
    CHECK_THROWS_AS(supply_functional(declines, reg, Vector::delta(reg.space(), {0})), SupplierContractViolation);

    const Action shift = Action::parse("shift");
    const auto st = FunctionalSupplier::builtin_stationary(Measure::srw(Group::zpower(1)));
    CHECK(supply_functional(st, shift, z_even()).functional.as<DensityFunctional>());
  }

  TEST_CASE("build_invariant_chain") {
    const Group c5 = Group::cyclic(5);
    const Action reg = Action::regular(c5);
    const auto F = indicators(reg.space(), c5.elements());
    const InvariantChain built = build_invariant_chain(reg, F, FunctionalSupplier::builtin_invariant());
    CHECK(built.chain.elements.size() == 1);
    CHECK(check_invariant_chain(reg, F, built).passed());
    CHECK(check_fullness(built.chain).full);

    const Action shift = Action::parse("shift");
    const std::vector<Vector> FZ{z::constant(1), z::delta(0)};
    const InvariantChain bz = build_invariant_chain(shift, FZ, FunctionalSupplier::builtin_invariant());
    REQUIRE(bz.chain.elements.size() == 2);
    CHECK(bz.chain.elements[0].functional.as<CountingFunctional>());
    CHECK(bz.chain.elements[1].functional.as<DensityFunctional>());
    CHECK(check_invariant_chain(shift, FZ, bz).passed());

    const InvariantChain single = build_invariant_chain(shift, {z_even()}, FunctionalSupplier::builtin_invariant());
    CHECK(single.chain.elements.size() == 1);
    CHECK_THROWS_AS(build_invariant_chain(shift, {}, FunctionalSupplier::builtin_invariant()), InputError);
  }

  TEST_CASE("invariant means on a finite window") {
    const std::vector<Vector> E{z::constant(1), z_even(), z::delta(0)};
    const Report r = invariant_mean_on(density_z_chain(), E, nullptr);
    for (const auto& c : r.checks) {
      INFO(c.name << ": " << c.witness);
      CHECK(c.passed);
    }
    CHECK(r.find("CM2")->checked > 0);
    const MeanPtr P = cm_from_vp(chain_pricing(density_z_chain()));
    CHECK(P->eval(z_even(), z::constant(1)) == q(1, 2));
    for (const auto& v : E) CHECK(P->eval(v, v) == 1);
  }

  TEST_CASE("property: invariant chains on small groups are exhaustively invariant") {
    for (const auto& g : {Group::cyclic(2), Group::cyclic(3), Group::cyclic(6), Group::symmetric(3)}) {
      const Action reg = Action::regular(g);
      const auto pts = g.elements();
      const auto F = indicators(reg.space(), pts);
      const InvariantChain built = build_invariant_chain(reg, F, FunctionalSupplier::builtin_invariant());
      CHECK(check_invariant_chain(reg, F, built).passed());
      CHECK(indicator_invariance(built.chain, reg).passed());
      const Report inv = check_invariance(chain_pricing(built.chain), reg, g.elements(), F);
      for (const auto& c : inv.checks) {
        INFO(g.spec() << " " << c.name << ": " << c.witness);
        CHECK(c.passed);
      }
    }
    // Permutation action of S_3 on three points, F built from non-indicator vectors.
    const Group s3 = Group::symmetric(3);
    const Action perm = Action::permutation(s3, 3);
    const std::vector<Vector> F{Vector::coords(3, {q(1), q(0), q(0)}), Vector::coords(3, {q(2), q(1, 2), q(0)})};
    const InvariantChain built = build_invariant_chain(perm, F, FunctionalSupplier::builtin_invariant());
    CHECK(check_invariant_chain(perm, F, built).passed());
    CHECK(indicator_invariance(built.chain, perm).passed());
  }

  TEST_CASE("property: density chain is stationary for finitely supported symmetric walks") {
    Gen gen(51);
    std::vector<Vector> probes;
    for (int i = 0; i < 100; ++i) {
      Vector v = gen.epz();
      if (!v.is_zero()) probes.push_back(v);
    }
    const PricingPtr d = chain_pricing(density_z_chain());
    const Group z = Group::zpower(1);
    const Measure wide(z, {{{-3}, q(1, 8)}, {{3}, q(1, 8)}, {{-1}, q(1, 4)}, {{1}, q(1, 4)}, {{0}, q(1, 4)}});
    for (const auto& mu : {Measure::srw(z), Measure::lazy(z), wide}) CHECK(check_stationarity(d, mu, probes).passed());
  }
}
