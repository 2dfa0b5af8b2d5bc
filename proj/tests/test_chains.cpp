#include "helpers.hpp"

#include "conemeans/errors.hpp"
#include "conemeans/order.hpp"
#include "conemeans/pricing.hpp"
#include "conemeans/sampler.hpp"

using namespace conemeans;
using namespace conemeans::test;

namespace {

PartialFunctional point_functional(const Space& s, int i) {
  return make_partial(s, Domain::generated({Vector::delta(s, {i})}), Functional::weighted({{{i}, q(1)}}),
                      "delta" + std::to_string(i));
}

}  // namespace

TEST_SUITE("chains") {
  TEST_CASE("Renyi order between counting and density") {
    const Space s = Space::periodic_z();
    const auto fin = make_partial(s, Domain::finitely_supported_z(), Functional::counting(), "counting");
    const auto dens = make_partial(s, Domain::whole(), Functional::density(), "density");
    CHECK(renyi_prec(s, fin, dens));
    CHECK_FALSE(renyi_prec(s, dens, fin));
    CHECK_FALSE(renyi_prec(s, fin, fin));
    CHECK_FALSE(renyi_prec(s, dens, dens));
  }

  TEST_CASE("validate_chain orders and rejects") {
    const Space s = Space::periodic_z();
    const auto fin = make_partial(s, Domain::finitely_supported_z(), Functional::counting(), "counting");
    const auto dens = make_partial(s, Domain::whole(), Functional::density(), "density");
    const Chain c = validate_chain(s, {dens, fin});
    REQUIRE(c.elements.size() == 2);
    CHECK(c.elements[0].label == "counting");
    CHECK(c.elements[1].label == "density");

    const Space x = Space::finite(3);
    try {
      validate_chain(x, {point_functional(x, 1), point_functional(x, 2)});
      FAIL("expected NotAChain");
    } catch (const NotAChain& e) {
      CHECK(std::string(e.what()).find("both-directions") != std::string::npos);
    }
    CHECK(validate_chain(x, {point_functional(x, 0)}).elements.size() == 1);
  }

  TEST_CASE("partial functionals must be positive and nonzero") {
    const Space x = Space::finite(2);
    CHECK_THROWS(make_partial(x, Domain::whole(), Functional::weighted({{{0}, q(-1)}}), "neg"));
    CHECK_THROWS(make_partial(x, Domain::generated({Vector::delta(x, {0})}), Functional::weighted({{{1}, q(1)}}), "zero"));
  }

  TEST_CASE("fullness") {
    CHECK(check_fullness(lexicographic_chain(4, {{0, 1}, {2}, {3}})).full);
    const Space x = Space::finite(4);
    const Chain missing = validate_chain(
        x, {make_partial(x, Domain::whole(), Functional::weighted({{{0}, q(1)}, {{1}, q(1)}}), "top"),
            make_partial(x, Domain::generated({Vector::coords(4, {q(0), q(0), q(1), q(1)})}),
                         Functional::weighted({{{2}, q(1)}}), "low")});
    const FullnessResult f = check_fullness(missing);
    CHECK_FALSE(f.full);
    REQUIRE(f.witness);
    CHECK(*f.witness == std::vector<Element>{{3}});
    const FullnessResult d = check_fullness(density_z_chain());
    CHECK(d.full);
  }

  TEST_CASE("chain pricing examples") {
    const Chain dz = density_z_chain();
    CHECK(eval_chain_pricing(dz, z::delta(0), z::constant(1)) == PriceValue(0L));
    CHECK(eval_chain_pricing(dz, z::delta(0), z::delta(0) + z::delta(5)) == PriceValue(q(1, 2)));
    CHECK(eval_chain_pricing(dz, z_even(), z::constant(1)) == PriceValue(q(1, 2)));
    CHECK(eval_chain_pricing(dz, z::constant(1), z::delta(0)).is_infinite());

    // Partition <{0},{1,2}> of a 3-point set.
    const Chain lex = lexicographic_chain(3, {{0}, {1, 2}});
    CHECK(lex.elements.size() == 2);
    const Space x = lex.space;
    CHECK(eval_chain_pricing(lex, Vector::delta(x, {1}), Vector::delta(x, {0})) == PriceValue(0L));
    CHECK(eval_chain_pricing(lex, Vector::delta(x, {0}), Vector::delta(x, {1})).is_infinite());
    CHECK(eval_chain_pricing(lex, Vector::delta(x, {1}), Vector::delta(x, {2})) == PriceValue(1L));

    const Chain rm = rightmost_z_chain(10);
    CHECK(eval_chain_pricing(rm, zind({0}), zind({0, 1})) == PriceValue(0L));
    CHECK(eval_chain_pricing(rm, zind({1}), zind({0, 1})) == PriceValue(1L));
    CHECK_THROWS_AS(eval_chain_pricing(rm, zind({11}), zind({0})), NotFullAt);
  }

  TEST_CASE("zero conventions") {
    const Chain lex = lexicographic_chain(2, {{0}, {1}});
    const Vector zero = Vector::zero(lex.space);
    CHECK(eval_chain_pricing(lex, zero, zero) == PriceValue(1L));
    CHECK(eval_chain_pricing(lex, Vector::delta(lex.space, {0}), zero).is_infinite());
    CHECK(eval_chain_pricing(lex, zero, Vector::delta(lex.space, {0})) == PriceValue(0L));
  }

  TEST_CASE("property: chain formula and handling index") {
    // Wherever u, v share the element that handles u + v, the price is J(u)/J(v).
    const std::vector<Chain> chains{lexicographic_chain(5, {{0, 1}, {2}, {3, 4}}),
                                    lexicographic_chain(6, {{5}, {0, 2, 4}, {1, 3}}, std::vector<Rational>{q(1), q(2), q(3), q(1, 2), q(5), q(1)}),
                                    density_z_chain()};
    for (const auto& chain : chains) {
      SamplerConfig cfg;
      cfg.seed = 21;
      Sampler s(chain.space, cfg);
      int in_domain = 0;
      for (int i = 0; i < 500; ++i) {
        const Vector u = s.positive_vector();
        const Vector v = s.nonzero_positive_vector();
        const auto kv = handling_index(chain, v);
        REQUIRE(kv);
        const auto& J = chain.elements[*kv];
        const auto ju = try_eval(J, u);
        // The element handling v also handles u + v.
        CHECK(handling_index(chain, u + v) >= kv);
        if (ju && chain.elements[*kv].domain.contains(u) && handling_index(chain, u + v) == kv) {
          ++in_domain;
          CHECK(eval_chain_pricing(chain, u, v) == PriceValue(*ju / *try_eval(J, v)));
        }
      }
      CHECK(in_domain > 0);
    }
  }

  TEST_CASE("property: rightmost chain is equivariant but not invariant") {
    const Chain rm = rightmost_z_chain(12);
    Gen gen(22);
    for (int i = 0; i < 200; ++i) {
      std::vector<std::int64_t> a, b;
      for (int x = -4; x <= 4; ++x) {
        if (gen.below(2)) a.push_back(x);
        if (gen.below(2)) b.push_back(x);
      }
      if (b.empty()) b.push_back(0);
      const int k = static_cast<int>(gen.below(9)) - 4;
      auto shift = [&](const std::vector<std::int64_t>& pts) {
        std::vector<std::int64_t> out;
        for (auto x : pts) out.push_back(x + k);
        return zind(out);
      };
      CHECK(eval_chain_pricing(rm, shift(a), shift(b)) == eval_chain_pricing(rm, zind(a), zind(b)));
    }
    CHECK(eval_chain_pricing(rm, zind({0}), zind({0, 1})) != eval_chain_pricing(rm, zind({1}), zind({0, 1})));
  }
}
