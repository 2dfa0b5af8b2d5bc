#include "helpers.hpp"

#include "conemeans/errors.hpp"
#include "conemeans/lattice.hpp"
#include "conemeans/pricing.hpp"
#include "conemeans/sampler.hpp"

using namespace conemeans;
using namespace conemeans::test;

namespace {

Vector ind(int n, std::vector<int> pts) {
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
  for (int i : pts) v[static_cast<std::size_t>(i)] = 1;
  return Vector::coords(n, v);
}

Vector mask_ind(int n, std::uint32_t m) {
  std::vector<int> pts;
  for (int i = 0; i < n; ++i)
    if (m & (1u << i)) pts.push_back(i);
  return ind(n, pts);
}

// Three-block lexicographic measure chain on four points.
CPTable lex_table() {
  return CPTable::from_measure_chain(4, {{q(1, 2), q(1, 2), q(0), q(0)},
                                         {q(0), q(0), q(1, 3), q(0)},
                                         {q(0), q(0), q(0), q(1)}});
}

}  // namespace

TEST_SUITE("lattice_ext") {
  TEST_CASE("meet and join") {
    CHECK(meet(ind(4, {0, 1}), ind(4, {1, 2})) == ind(4, {1}));
    CHECK(join(ind(4, {0, 1}), ind(4, {1, 2})) == ind(4, {0, 1, 2}));
    const Vector u = xvec({q(3), q(-1), q(2)});
    CHECK(meet(u, u) == u);
    CHECK(meet(z_even(), z::constant(1)) == z_even());
    CHECK(abs(u) == xvec({q(3), q(1), q(2)}));
  }

  TEST_CASE("self-majorizing") {
    const auto d = is_self_majorizing(z::delta(0));
    CHECK(d.self_majorizing);
    CHECK(*d.lower_bound == 1);
    const auto s = is_self_majorizing(ind(4, {0}) * q(1, 3) + ind(4, {2, 3}) * 2);
    CHECK(s.self_majorizing);
    CHECK(*s.lower_bound == q(1, 3));
    CHECK_FALSE(is_self_majorizing(Vector::zero(Space::finite(2))).self_majorizing);
  }

  TEST_CASE("band projection") {
    const auto b = band_projection(ind(4, {1, 2}), ind(4, {0, 1}));
    CHECK(b.projection == ind(4, {1}));
    CHECK(b.n_star == 1);
    const Vector u = xvec({q(1), q(2), q(0)});
    CHECK(band_projection(xvec({q(1), q(1), q(1)}), u).projection == u);
    const Vector u5 = xvec({q(5), q(0)});
    const auto b5 = band_projection(xvec({q(1, 2), q(1)}), u5);
    CHECK(b5.n_star == 10);
    CHECK(b5.projection == u5);
    CHECK(meet_multiple(u5, xvec({q(1, 2), q(1)}), 9) != u5);
  }

  TEST_CASE("global extension of a conditional mean") {
    const MeanPtr P = cm_from_vp(chain_pricing(lexicographic_chain(4, {{0, 1}, {2, 3}})));
    const Vector v = ind(4, {0, 1, 2});
    CHECK(extend_cm_global(*P, ind(4, {0}), v) == P->eval(ind(4, {0}), v));
    CHECK(extend_cm_global(*P, ind(4, {0, 3}), ind(4, {0, 2})) == P->eval(ind(4, {0}), ind(4, {0, 2})));
    CHECK(extend_cm_global(*P, v * 2, v) == 2);
  }

  TEST_CASE("CP tables") {
    const CPTable t = lex_table();
    CHECK(cp_validate(t).passed());
    CHECK(t.get(CPTable::mask_of({0}), CPTable::mask_of({0, 1, 2})) == q(1, 2));
    CHECK(t.get(CPTable::mask_of({2}), CPTable::mask_of({2, 3})) == 1);

    CPTable bad = t;
    bad.set(CPTable::mask_of({0, 1}), CPTable::mask_of({0, 1}), q(1, 2));
    CHECK_FALSE(cp_validate(bad).passed());
    CHECK_THROWS_AS(cp_to_cm(bad), InputError);

    CPTable rule = t;
    rule.set(CPTable::mask_of({0}), CPTable::mask_of({0, 1, 2, 3}), q(1, 3));
    rule.set(CPTable::mask_of({1}), CPTable::mask_of({0, 1, 2, 3}), q(2, 3));
    const Report r = cp_validate(rule);
    CHECK_FALSE(r.passed());
  }

  TEST_CASE("CP lift restricts to the table") {
    const CPTable t = lex_table();
    const MeanPtr P = cp_to_cm(t);
    for (std::uint32_t b = 1; b < 16; ++b)
      for (std::uint32_t a = 0; a < 16; ++a)
        if ((a & b) == a) CHECK(P->eval(mask_ind(4, a), mask_ind(4, b)) == t.get(a, b));
    // v constant on its support.
    const Vector v = ind(4, {0, 2}) * 3;
    CHECK(P->eval(ind(4, {0}), v) == t.get(CPTable::mask_of({0}), CPTable::mask_of({0, 2})) / 3);
  }

  TEST_CASE("property: indicator conditional means see only the band") {
    // P(1_A|1_B) = P(1_{A∩B}|1_B) on all nonempty subsets of a five-point set.
    const MeanPtr P = cm_from_vp(chain_pricing(lexicographic_chain(5, {{4}, {0, 2}, {1, 3}})));
    for (std::uint32_t b = 1; b < 32; ++b)
      for (std::uint32_t a = 1; a < 32; ++a)
        CHECK(extend_cm_global(*P, mask_ind(5, a), mask_ind(5, b)) == P->eval(mask_ind(5, a & b), mask_ind(5, b)));
  }

  TEST_CASE("property: stabilization at n*") {
    Gen gen(61);
    for (int i = 0; i < 300; ++i) {
      const int n = 1 + static_cast<int>(gen.below(8));
      const Vector u = gen.finite(n), v = gen.finite(n);
      if (v.is_zero()) continue;
      const auto b = band_projection(v, u);
      for (int k = 0; k <= 2; ++k) CHECK(meet_multiple(u, v, b.n_star + k) == b.projection);
    }
  }

  TEST_CASE("property: lattice identities") {
    Gen gen(62);
    for (int i = 0; i < 1000; ++i) {
      const Vector u = gen.finite(5, true), v = gen.finite(5, true), w = gen.finite(5, true);
      CHECK(meet(u + w, v + w) == meet(u, v) + w);
      CHECK(join(u + w, v + w) == join(u, v) + w);
      CHECK(meet(u, v) + join(u, v) == u + v);
      CHECK(abs(u) == join(u, -u));
    }
    for (int i = 0; i < 200; ++i) {
      const Vector u = gen.epz(true), v = gen.epz(true);
      CHECK(meet(u, v) + join(u, v) == u + v);
    }
  }

  TEST_CASE("property: the global extension is a positive linear functional") {
    const MeanPtr P = cm_from_vp(chain_pricing(lexicographic_chain(6, {{0, 1}, {2}, {3, 4, 5}})));
    Gen gen(63);
    for (int i = 0; i < 300; ++i) {
      const Vector v = gen.finite(6);
      if (v.is_zero()) continue;
      const Vector a = gen.finite(6), b = gen.finite(6);
      const Rational t = gen.entry();
      CHECK(extend_cm_global(*P, a + b, v) == extend_cm_global(*P, a, v) + extend_cm_global(*P, b, v));
      CHECK(extend_cm_global(*P, a * t, v) == t * extend_cm_global(*P, a, v));
      CHECK(extend_cm_global(*P, a, v) <= extend_cm_global(*P, a + b, v));
      CHECK(extend_cm_global(*P, v, v) == 1);
    }
  }

  TEST_CASE("property: lifted CP tables satisfy the mean axioms") {
    SamplerConfig cfg;
    cfg.seed = 64;
    cfg.count = 400;
    const Report r = check_axioms(cp_to_cm(lex_table()), cfg);
    for (const auto& c : r.checks) {
      INFO(c.name << ": " << c.witness);
      CHECK(c.passed);
    }
    const MeanPtr P = cp_to_cm(lex_table());
    Gen gen(65);
    for (int i = 0; i < 100; ++i) {
      const std::uint32_t b = 1 + static_cast<std::uint32_t>(gen.below(15));
      const std::uint32_t a = static_cast<std::uint32_t>(gen.below(16)) & b;
      CHECK(P->eval(mask_ind(4, a), mask_ind(4, b)) == lex_table().get(a, b));
    }
  }
}
