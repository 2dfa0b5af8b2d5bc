#include "helpers.hpp"

#include <gmpxx.h>

#include "conemeans/action.hpp"
#include "conemeans/errors.hpp"
#include "conemeans/walks.hpp"

using namespace conemeans;
using namespace conemeans::test;

namespace {

Rational binomial_over_pow2(unsigned n, unsigned k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  mpz_class d = 1;
  d <<= n;
  Rational r(c, d);
  r.canonicalize();
  return r;
}

// Return probability of SRW on F_2 by enumerating every word and freely reducing it.
Rational free_return_bruteforce(unsigned n) {
  const int letters[4] = {1, -1, 2, -2};
  std::uint64_t total = 1, back = 0;
  for (unsigned i = 0; i < n; ++i) total *= 4;
  for (std::uint64_t w = 0; w < total; ++w) {
    std::vector<int> stack;
    std::uint64_t code = w;
    for (unsigned i = 0; i < n; ++i) {
      const int x = letters[code % 4];
      code /= 4;
      if (!stack.empty() && stack.back() == -x) {
        stack.pop_back();
      } else {
        stack.push_back(x);
      }
    }
    if (stack.empty()) ++back;
  }
  Rational r{mpz_class(back), mpz_class(total)};
  r.canonicalize();
  return r;
}

// Closed-walk counts on the cycle Z/m by dynamic programming over positions.
Rational cycle_return(int m, unsigned n) {
  std::vector<mpz_class> ways(static_cast<std::size_t>(m), 0);
  ways[0] = 1;
  for (unsigned s = 0; s < n; ++s) {
    std::vector<mpz_class> next(static_cast<std::size_t>(m), 0);
    for (int x = 0; x < m; ++x) {
      next[static_cast<std::size_t>((x + 1) % m)] += ways[static_cast<std::size_t>(x)];
      next[static_cast<std::size_t>((x + m - 1) % m)] += ways[static_cast<std::size_t>(x)];
    }
    ways = std::move(next);
  }
  mpz_class d = 1;
  d <<= n;
  Rational r(ways[0], d);
  r.canonicalize();
  return r;
}

Rational mass(const Measure& m) { return m.total(); }

}  // namespace

TEST_SUITE("groups_walks") {
  TEST_CASE("convolution basics") {
    const Group z = Group::zpower(1);
    const Measure srw = Measure::srw(z);
    CHECK(convolve(Measure::dirac(z), srw) == srw);
    CHECK(conv_power(srw, 0) == Measure::dirac(z));
    CHECK(conv_power(srw, 2).at({0}) == q(1, 2));
    CHECK(conv_power(srw, 4).at({0}) == q(3, 8));
    CHECK(conv_power(srw, 24).at({0}) == binomial_over_pow2(24, 12));
    CHECK(conv_power(Measure::srw(Group::cyclic(2)), 2).at({0}) == 1);
    CHECK(conv_power(Measure::srw(Group::free(2)), 2).at({}) == q(1, 4));
  }

  TEST_CASE("return probabilities against path-count oracles") {
    const Measure z = Measure::srw(Group::zpower(1));
    for (unsigned n = 1; n <= 12; ++n) CHECK(conv_power(z, 2 * n).at({0}) == binomial_over_pow2(2 * n, n));
    const Measure f2 = Measure::srw(Group::free(2));
    for (unsigned n = 1; n <= 8; ++n) CHECK(conv_power(f2, n).at({}) == free_return_bruteforce(n));
    const Measure c6 = Measure::srw(Group::cyclic(6));
    for (unsigned n = 1; n <= 20; ++n) CHECK(conv_power(c6, n).at({0}) == cycle_return(6, n));
  }

  TEST_CASE("support cap") { CHECK_THROWS_AS(conv_power(Measure::srw(Group::free(2)), 10, 100), SupportCapExceeded); }

  TEST_CASE("mu_apply") {
    const Measure srw = Measure::srw(Group::zpower(1));
    CHECK(mu_apply(Measure::dirac(Group::zpower(1)), z_even()) == z_even());
    CHECK(mu_apply(srw, z::constant(1)) == z::constant(1));
    CHECK(mu_apply(srw, z::delta(0)) == (z::delta(-1) + z::delta(1)) * q(1, 2));
    CHECK(mu_apply(srw, z_even()) == z::periodic({Rational(0), Rational(1)}));
  }

  TEST_CASE("spectral radius lower bounds") {
    const auto z = spectral_radius_bounds(Measure::srw(Group::zpower(1)), 12);
    REQUIRE(z.size() == 12);
    CHECK(strictly_increasing(z));
    CHECK(z.back().p2n == binomial_over_pow2(24, 12));
    CHECK(z.back().lower == doctest::Approx(0.9267).epsilon(1e-3));

    const auto c6 = spectral_radius_bounds(Measure::srw(Group::cyclic(6)), 30);
    CHECK(strictly_increasing(c6));
    // p_{2n} decreases to 1/3 on the bipartite 6-cycle.
    CHECK(c6.back().p2n > q(1, 3));
    CHECK(c6.back().lower >= 0.95);

    const auto f2 = spectral_radius_bounds(Measure::srw(Group::free(2)), 12);
    CHECK(strictly_increasing(f2));
    CHECK(kesten_upper(2) == q(15589, 18000));
    CHECK(bounded_by(f2, kesten_upper(2)));
    CHECK_FALSE(bounded_by(f2, q(1, 2)));
    // Exact comparison with the cap: p_{2n} <= (15589/18000)^{2n}.
    for (const auto& b : f2) CHECK(b.p2n <= pow(kesten_upper(2), 2 * b.n));
    CHECK_THROWS_AS(spectral_radius_bounds(Measure(Group::zpower(1), {{{1}, q(1)}}), 3), PreconditionFailed);
  }

  TEST_CASE("Kesten caps over-approximate sqrt(2k-1)/k") {
    for (int k = 2; k <= 5; ++k) {
      const Rational c = kesten_upper(k);
      // c >= sqrt(2k-1)/k  <=>  c^2 k^2 >= 2k - 1.
      CHECK(c * c * k * k >= 2 * k - 1);
      CHECK(c * c * k * k - (2 * k - 1) < q(1, 100));
    }
  }

  TEST_CASE("Green function") {
    const Measure srw = Measure::srw(Group::zpower(1));
    CHECK(green_truncated(srw, q(9, 8), 0) == Vector::delta(Space::group(Group::zpower(1)), {0}));
    const Vector g2 = green_truncated(srw, q(9, 8), 2);
    // Term by term: 1 + z * 0 + z^2 * C(2,1)/4.
    const Rational z = q(9, 8);
    CHECK(g2.at({0}) == 1 + z * z * binomial_over_pow2(2, 1));
    CHECK(g2.at({0}) == q(209, 128));
    CHECK(g2.at({1}) == z * q(1, 2));
    CHECK(g2.at({3}) == 0);
    for (unsigned n = 0; n <= 12; ++n) CHECK(green_identity_check(srw, q(9, 8), n).holds);
    for (unsigned n = 0; n <= 6; ++n) CHECK(green_identity_check(Measure::srw(Group::free(2)), q(9, 8), n).holds);
    const Vector g3 = green_truncated(srw, q(9, 8), 3);
    CHECK(green_identity_holds(srw, q(9, 8), g2, g3));
    CHECK_FALSE(green_identity_holds(srw, q(9, 8), g2, g3 + Vector::delta(g3.space(), {1}, q(1, 1000))));
  }

  TEST_CASE("obstruction certificate") {
    const Measure f2 = Measure::srw(Group::free(2));
    const ObstructionCertificate c = obstruction_certificate(f2, q(9, 8), kesten_upper(2), 10);
    CHECK(c.identity_holds);
    CHECK(c.decay_holds);
    CHECK(c.lower_bounds_hold);
    CHECK(c.z_rho == q(15589, 16000));
    CHECK(c.geometric_bound == 1 / (1 - c.z_rho));
    CHECK(c.max_green <= c.geometric_bound);
    CHECK(replay_obstruction(c));
    auto bad = c;
    bad.geometric_bound = q(1);
    CHECK_FALSE(replay_obstruction(bad));

    const Measure z = Measure::srw(Group::zpower(1));
    CHECK_THROWS_AS(obstruction_certificate(f2, q(1), kesten_upper(2), 4), PreconditionFailed);
    CHECK_THROWS_AS(obstruction_certificate(z, q(9, 8), q(7, 8), 12), PreconditionFailed);
  }

  TEST_CASE("harmonic functions from functionals") {
    const Group c5 = Group::cyclic(5);
    const Space s = Space::group(c5);
    const auto J = make_partial(s, Domain::whole(), Functional::counting(), "counting");
    const Measure mu = Measure::srw(c5);
    const Vector v = Vector::delta(s, {0}) + Vector::delta(s, {2}, q(3));
    CHECK(harmonic_from_functional(J, Action::regular(c5), v, c5.elements(), mu, q(1)).passed());
    CHECK_FALSE(harmonic_from_functional(J, Action::regular(c5), v, c5.elements(), mu, q(1, 2)).passed());

    const auto D = make_partial(Space::periodic_z(), Domain::whole(), Functional::density(), "density");
    CHECK(harmonic_from_functional(D, Action::parse("shift"), z::constant(1), Group::zpower(1).ball(3),
                                   Measure::srw(Group::zpower(1)), q(1))
              .passed());
  }

  TEST_CASE("property: convolution powers conserve mass and symmetry") {
    for (const auto& mu : {Measure::srw(Group::zpower(2)), Measure::lazy(Group::zpower(1)),
                           Measure::srw(Group::free(2)), Measure::uniform(Group::symmetric(3)),
                           Measure(Group::cyclic(7), {{{1}, q(1, 3)}, {{6}, q(1, 3)}, {{0}, q(1, 3)}})}) {
      Measure p = Measure::dirac(mu.group());
      for (unsigned n = 0; n <= 6; ++n) {
        CHECK(mass(p) == 1);
        CHECK(p.is_symmetric());
        p = convolve(p, mu);
      }
    }
  }

  TEST_CASE("property: decay bound on a non-amenable walk") {
    const Measure f2 = Measure::srw(Group::free(2));
    const Rational rho = kesten_upper(2);
    Measure p = Measure::dirac(f2.group());
    for (unsigned n = 1; n <= 8; ++n) {
      p = convolve(p, f2);
      for (const auto& [x, w] : p.weights()) CHECK(w <= pow(rho, n));
    }
  }

  TEST_CASE("property: mu_apply is positive and additive") {
    Gen gen(41);
    const Measure mu = Measure::lazy(Group::zpower(1));
    for (int i = 0; i < 300; ++i) {
      const Vector u = gen.epz(), v = gen.epz(true);
      CHECK(mu_apply(mu, u + v) == mu_apply(mu, u) + mu_apply(mu, v));
      const Vector mu_u = mu_apply(mu, u);
      bool nonneg = true;
      mu_u.for_each_value([&](const Rational& x) { nonneg = nonneg && x >= 0; });
      CHECK(nonneg);
    }
  }
}
