#include "conemeans/chains.hpp"

#include <algorithm>
#include <numeric>

#include "conemeans/errors.hpp"

namespace conemeans {

namespace {

bool tail_nonzero(const std::vector<Rational>& period) {
  return std::any_of(period.begin(), period.end(), [](const Rational& q) { return q != 0; });
}

// Points of a finite coordinatewise space, in a fixed order.
std::optional<std::vector<Element>> finite_points(const Space& space) {
  if (auto fc = space.as<FiniteCoordSpace>()) {
    std::vector<Element> pts;
    for (int i = 0; i < fc->size; ++i) pts.push_back({i});
    return pts;
  }
  if (auto gs = space.as<GroupSpace>()) {
    if (gs->group.is_finite()) return gs->group.elements();
  }
  return std::nullopt;
}

Vector indicator_of(const Space& space, const std::vector<Element>& pts) {
  SparseEntries e;
  for (const auto& p : pts) e[p] = 1;
  return Vector::sparse(space, std::move(e));
}

// Vectors whose ideal is the whole space, when finitely many suffice.
std::optional<std::vector<Vector>> whole_space_spanning(const Space& space) {
  if (space.as<PeriodicZSpace>()) return std::vector<Vector>{z::constant(1)};
  if (auto pts = finite_points(space)) {
    std::vector<Vector> out;
    for (const auto& p : *pts) out.push_back(Vector::delta(space, p));
    return out;
  }
  if (auto pc = space.as<PolyConeSpace>()) {
    std::vector<Vector> out;
    for (int i = 0; i < pc->dim; ++i) out.push_back(Vector::delta(space, {i}));
    return out;
  }
  return std::nullopt;
}

// Sum of generators is nonzero at every point of Z.
bool everywhere_positive(const std::vector<Vector>& gens) {
  if (gens.empty()) return false;
  Vector s = gens.front();
  for (std::size_t i = 1; i < gens.size(); ++i) s = s + gens[i];
  auto p = s.periodic_data();
  if (!p) return false;
  bool ok = true;
  s.for_each_value([&](const Rational& q) { ok = ok && q != 0; });
  return ok;
}

}  // namespace

Domain Domain::generated(std::vector<Vector> generators) {
  for (const auto& g : generators) {
    require_same_space(g, generators.front());
    if (!is_positive(g)) throw InputError("domain generator is not positive: " + g.to_string());
  }
  return Domain(GeneratedDomain{std::move(generators)});
}

Domain Domain::shift_orbit(Vector seed) {
  if (!seed.periodic_data()) throw InputError("shift-orbit domains live on Z");
  if (!is_positive(seed)) throw InputError("shift-orbit seed is not positive");
  return Domain(ShiftOrbitDomain{std::move(seed)});
}

Domain Domain::finitely_supported_z() { return shift_orbit(z::delta(0)); }

bool Domain::contains(const Vector& v) const {
  if (std::holds_alternative<WholeDomain>(kind_)) return true;
  if (auto g = as<GeneratedDomain>()) {
    if (g->generators.empty()) return v.is_zero();
    if (auto e = v.sparse_entries(); e && v.space().is_coordinatewise()) {
      // Finitely supported: membership is support inclusion.
      for (const auto& [x, q] : *e) {
        if (q == 0) continue;
        const bool covered = std::any_of(g->generators.begin(), g->generators.end(),
                                         [&](const Vector& a) { return a.at(x) != 0; });
        if (!covered) return false;
      }
      for (const auto& a : g->generators)
        if (a.space() != v.space()) throw SpaceMismatch("ideal generators and vector live in different spaces");
      return true;
    }
    return ideal_contains(g->generators, v).member;
  }
  const auto& w = std::get<ShiftOrbitDomain>(kind_).seed;
  auto pv = v.periodic_data();
  if (!pv) throw SpaceMismatch("shift-orbit membership needs a Z-vector");
  if (v.is_zero()) return true;
  if (w.is_zero()) return false;
  const auto& pw = *w.periodic_data();
  if (tail_nonzero(pv->left) && !tail_nonzero(pw.left)) return false;
  if (tail_nonzero(pv->right) && !tail_nonzero(pw.right)) return false;
  return true;
}

bool Domain::includes(const Domain& other, const Space& space) const {
  if (std::holds_alternative<WholeDomain>(kind_)) return true;
  if (auto g = other.as<GeneratedDomain>()) {
    return std::all_of(g->generators.begin(), g->generators.end(), [&](const Vector& a) { return contains(a); });
  }
  if (other.as<WholeDomain>()) {
    auto span = whole_space_spanning(space);
    if (!span) return false;
    return std::all_of(span->begin(), span->end(), [&](const Vector& a) { return contains(a); });
  }
  const auto& w = other.as<ShiftOrbitDomain>()->seed;
  if (w.is_zero()) return true;
  if (auto g = as<GeneratedDomain>()) return everywhere_positive(g->generators);
  return contains(w);
}

std::string Domain::describe() const {
  if (std::holds_alternative<WholeDomain>(kind_)) return "whole";
  if (auto g = as<GeneratedDomain>()) {
    std::string s = "ideal{";
    for (std::size_t i = 0; i < g->generators.size(); ++i) s += (i ? "; " : "") + g->generators[i].to_string();
    return s + "}";
  }
  return "shift-orbit(" + std::get<ShiftOrbitDomain>(kind_).seed.to_string() + ")";
}

std::optional<Rational> try_eval(const PartialFunctional& p, const Vector& v) {
  try {
    if (!p.domain.contains(v)) return std::nullopt;
    return p.functional.eval(v);
  } catch (const DomainError&) {
    return std::nullopt;
  } catch (const SpaceMismatch&) {
    return std::nullopt;
  }
}

PartialFunctional make_partial(const Space& space, Domain domain, Functional functional, std::string label) {
  if (!is_positive_functional(functional, space)) throw InputError("functional '" + label + "' is not positive");
  PartialFunctional p{std::move(domain), std::move(functional), std::move(label)};
  auto defined_nonzero = [&](const std::vector<Vector>& gens) {
    bool nonzero = false;
    for (const auto& g : gens) {
      require_same_space(g, Vector::zero(space));
      auto val = try_eval(p, g);
      if (!val) throw InputError("functional '" + p.label + "' is undefined on its domain");
      nonzero = nonzero || *val != 0;
    }
    return nonzero;
  };
  bool nonzero = false;
  if (auto g = p.domain.as<GeneratedDomain>()) {
    nonzero = defined_nonzero(g->generators);
  } else if (p.domain.as<WholeDomain>()) {
    if (space.as<PeriodicZSpace>() && p.functional.as<CountingFunctional>())
      throw InputError("counting is undefined on the whole of Z");
    if (auto span = whole_space_spanning(space); span && !space.as<PolyConeSpace>()) {
      nonzero = defined_nonzero(*span);
    } else if (auto pc = space.as<PolyConeSpace>()) {
      std::vector<Vector> gens;
      for (const auto& g : pc->generators) gens.push_back(Vector::dense(space, g));
      nonzero = defined_nonzero(gens);
    } else {
      nonzero = !p.functional.as<WeightedFunctional>() || !p.functional.as<WeightedFunctional>()->weights.empty();
    }
  } else {
    const auto& w = p.domain.as<ShiftOrbitDomain>()->seed;
    if (p.functional.as<CountingFunctional>() && !w.finitely_supported())
      throw InputError("counting is undefined on a shift-orbit ideal with periodic tails");
    if (auto wf = p.functional.as<WeightedFunctional>()) {
      nonzero = !wf->weights.empty() && !w.is_zero();
    } else {
      nonzero = p.functional.eval(w) != 0;
    }
  }
  if (!nonzero) throw InputError("functional '" + p.label + "' vanishes on its domain");
  return p;
}

bool renyi_prec(const Space& space, const PartialFunctional& p1, const PartialFunctional& p2) {
  // J2 is read through its formula, i.e. its natural extension beyond U2; a
  // formula that is undefined on U1 means "not below". J2 vanishes on U1 iff
  // it vanishes on the generators of U1.
  auto vanishes = [&](const Vector& a) {
    try {
      return a.space() == space && p2.functional.eval(a) == 0;
    } catch (const DomainError&) {
      return false;
    }
  };
  if (p1.domain.as<WholeDomain>()) return false;
  if (auto g = p1.domain.as<GeneratedDomain>())
    return std::all_of(g->generators.begin(), g->generators.end(), vanishes);
  const auto& w = p1.domain.as<ShiftOrbitDomain>()->seed;
  if (w.is_zero()) return true;
  // Shifts of w all have the density of w; any other kind sees some shift.
  return p2.functional.as<DensityFunctional>() && vanishes(w);
}

Chain validate_chain(const Space& space, std::vector<PartialFunctional> elements) {
  const std::size_t n = elements.size();
  std::vector<std::vector<bool>> prec(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    if (renyi_prec(space, elements[i], elements[i])) throw NotAChain(i, i, "both-directions");
    for (std::size_t j = i + 1; j < n; ++j) {
      bool a = renyi_prec(space, elements[i], elements[j]);
      bool b = renyi_prec(space, elements[j], elements[i]);
      if (a && b) throw NotAChain(i, j, "both-directions");
      if (!a && !b) throw NotAChain(i, j, "incomparable");
      prec[i][j] = a;
      prec[j][i] = b;
    }
  }
  // A tournament is a strict total order iff the predecessor counts are 0..n-1.
  std::vector<std::size_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (prec[j][i]) ++below[i];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  for (std::size_t k = 0; k < n; ++k) {
    if (below[order[k]] != k) {
      std::size_t a = order[k];
      for (std::size_t b = 0; b < n; ++b)
        if (b != a && below[b] == below[a]) throw NotAChain(std::min(a, b), std::max(a, b), "intransitive");
      throw NotAChain(a, a, "intransitive");
    }
  }
  Chain chain{space, {}};
  for (auto i : order) chain.elements.push_back(std::move(elements[i]));
  return chain;
}

namespace {

// Support of the domain and positive support of J, as point flags.
struct PointProfile {
  std::vector<bool> domain;
  std::vector<bool> positive;
};

PointProfile profile(const PartialFunctional& p, const Space& space, const std::vector<Element>& pts) {
  PointProfile prof{std::vector<bool>(pts.size(), false), std::vector<bool>(pts.size(), false)};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto val = try_eval(p, Vector::delta(space, pts[i]));
    prof.domain[i] = val.has_value();
    prof.positive[i] = val && *val > 0;
  }
  return prof;
}

FullnessResult fullness_finite(const Chain& chain, const std::vector<Element>& pts) {
  const std::size_t n = pts.size();
  std::vector<PointProfile> profs;
  for (const auto& e : chain.elements) profs.push_back(profile(e, chain.space, pts));
  if (n <= 20) {
    std::vector<std::uint32_t> dom, pos;
    for (const auto& p : profs) {
      std::uint32_t d = 0, q = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (p.domain[i]) d |= 1u << i;
        if (p.positive[i]) q |= 1u << i;
      }
      dom.push_back(d);
      pos.push_back(q);
    }
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
      bool handled = false;
      for (std::size_t k = 0; k < dom.size() && !handled; ++k) handled = (s & ~dom[k]) == 0 && (s & pos[k]) != 0;
      if (!handled) {
        std::vector<Element> witness;
        for (std::size_t i = 0; i < n; ++i)
          if (s & (1u << i)) witness.push_back(pts[i]);
        return {false, witness, "exhaustive"};
      }
    }
    return {true, std::nullopt, "exhaustive"};
  }
  for (std::size_t k = 1; k < profs.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (profs[k - 1].domain[i] && !profs[k].domain[i])
        throw UnsupportedSpace("fullness above 20 points needs nested domains");
  for (std::size_t i = 0; i < n; ++i) {
    bool handled = false;
    for (const auto& p : profs) handled = handled || (p.domain[i] && p.positive[i]);
    if (!handled) return {false, std::vector<Element>{pts[i]}, "nested-singletons"};
  }
  return {true, std::nullopt, "nested-singletons"};
}

}  // namespace

FullnessResult check_fullness(const Chain& chain) {
  if (auto pts = finite_points(chain.space)) return fullness_finite(chain, *pts);
  if (chain.space.as<PeriodicZSpace>()) {
    // A positive vector of density 0 is finitely supported, so a density
    // element on the whole space plus counting on all finitely supported
    // vectors handles everything.
    bool has_density = false, has_counting = false;
    const Domain fin = Domain::finitely_supported_z();
    for (const auto& e : chain.elements) {
      if (e.domain.as<WholeDomain>() && e.functional.as<DensityFunctional>()) has_density = true;
      if (e.functional.as<CountingFunctional>() && e.domain.includes(fin, chain.space)) has_counting = true;
    }
    if (has_density && has_counting) return {true, std::nullopt, "density-structural"};
    throw UnsupportedSpace("fullness on Z is only decided for density/counting chains");
  }
  throw UnsupportedSpace("fullness is not decidable for " + chain.space.describe());
}

std::optional<std::size_t> handling_index(const Chain& chain, const Vector& w) {
  for (std::size_t k = chain.elements.size(); k-- > 0;) {
    auto val = try_eval(chain.elements[k], w);
    if (val && *val != 0) return k;
  }
  return std::nullopt;
}

PriceValue eval_chain_pricing(const Chain& chain, const Vector& u, const Vector& v) {
  require_same_space(u, v);
  if (u.space() != chain.space) throw SpaceMismatch("vector is not in the chain's space");
  if (!is_positive(u) || !is_positive(v)) throw DomainError("pricing needs positive vectors");
  if (v.is_zero()) return u.is_zero() ? PriceValue(1L) : PriceValue::infinity();
  const Vector w = u + v;
  auto k = handling_index(chain, w);
  if (!k) throw NotFullAt(w.to_string());
  const auto& J = chain.elements[*k].functional;
  return PriceValue::ratio(J.eval(u), J.eval(v));
}

Chain lexicographic_chain(int n, const std::vector<std::vector<int>>& partition,
                          const std::optional<std::vector<Rational>>& weights) {
  const Space space = Space::finite(n);
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (const auto& block : partition) {
    if (block.empty()) throw InputError("empty partition block");
    for (int x : block) {
      if (x < 0 || x >= n) throw InputError("partition index out of range");
      if (seen[static_cast<std::size_t>(x)]++) throw InputError("partition blocks overlap");
    }
  }
  if (std::count(seen.begin(), seen.end(), 0)) throw InputError("partition does not cover X");
  if (weights) {
    if (static_cast<int>(weights->size()) != n) throw InputError("weights need one entry per coordinate");
    for (const auto& w : *weights)
      if (w <= 0) throw InputError("lexicographic weights must be positive");
  }
  std::vector<PartialFunctional> elems;
  const int m = static_cast<int>(partition.size());
  for (int k = m - 1; k >= 0; --k) {
    std::vector<Element> tail;
    for (int j = k; j < m; ++j)
      for (int x : partition[static_cast<std::size_t>(j)]) tail.push_back({x});
    SparseEntries w;
    for (int x : partition[static_cast<std::size_t>(k)]) w[{x}] = weights ? (*weights)[static_cast<std::size_t>(x)] : Rational(1);
    elems.push_back(make_partial(space, Domain::generated({indicator_of(space, tail)}), Functional::weighted(w),
                                 "lex[" + std::to_string(k + 1) + "]"));
  }
  return validate_chain(space, std::move(elems));
}

Chain rightmost_z_chain(std::int64_t window) {
  if (window <= 0) throw InputError("rightmost window must be positive");
  const Space space = Space::periodic_z();
  std::vector<PartialFunctional> elems;
  std::vector<std::int64_t> pts;
  for (auto n = -window; n <= window; ++n) {
    pts.push_back(n);
    elems.push_back(make_partial(space, Domain::generated({z::indicator(pts)}), Functional::weighted({{{static_cast<std::int32_t>(n)}, Rational(1)}}),
                                 "rightmost[" + std::to_string(n) + "]"));
  }
  return validate_chain(space, std::move(elems));
}

Chain density_z_chain() {
  const Space space = Space::periodic_z();
  std::vector<PartialFunctional> elems;
  elems.push_back(make_partial(space, Domain::finitely_supported_z(), Functional::counting(), "counting"));
  elems.push_back(make_partial(space, Domain::whole(), Functional::density(), "density"));
  return validate_chain(space, std::move(elems));
}

}  // namespace conemeans
