#include "conemeans/invariant.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "conemeans/errors.hpp"

namespace conemeans {

namespace {

bool is_z(const Action& a) { return a.space().as<PeriodicZSpace>() != nullptr; }

std::vector<Element> orbit_points(const Action& action, const Vector& w) {
  if (!w.sparse_entries()) throw UnsupportedSpace("orbit points need a finite point space");
  std::set<Element> pts;
  const Group& G = action.group();
  for (const auto& g : G.elements()) {
    const Vector gw = action.apply(g, w);
    for (const auto& [x, q] : *gw.sparse_entries()) pts.insert(x);
  }
  return {pts.begin(), pts.end()};
}

Vector sum_of(const Space& space, const std::vector<Vector>& F, const std::vector<std::size_t>& idx) {
  Vector s = Vector::zero(space);
  for (auto i : idx) s = s + F[i];
  return s;
}

// Same ideal: coordinatewise ideals are determined by their supports.
bool same_ideal(const Domain& a, const Domain& b, const Space& space) {
  return a.includes(b, space) && b.includes(a, space);
}

void validate_supplied(const FunctionalSupplier& s, const Action& action, const Vector& w, const PartialFunctional& p) {
  const Space& space = action.space();
  if (!is_positive_functional(p.functional, space)) throw SupplierContractViolation("J is not positive");
  if (!same_ideal(p.domain, orbit_ideal(action, w), space))
    throw SupplierContractViolation("U is not the orbit ideal of w");
  auto jw = try_eval(p, w);
  if (!jw || *jw == 0) throw SupplierContractViolation("J(w) = 0");
  std::vector<Element> probes = s.probes.empty() ? action.group().generators() : s.probes;
  for (const auto& g : probes) {
    auto jg = try_eval(p, action.apply(g, w));
    if (!jg || *jg != *jw)
      throw SupplierContractViolation("J(gw) != J(w) for g = " + action.group().format(g));
  }
  if (s.mode == FunctionalSupplier::Mode::Stationary) {
    auto jm = try_eval(p, mu_apply(*s.mu, w));
    if (!jm || *jm != *jw) throw SupplierContractViolation("J(mu*w) != J(w)");
  }
}

}  // namespace

FunctionalSupplier FunctionalSupplier::builtin_stationary(Measure mu) {
  FunctionalSupplier s;
  s.mode = Mode::Stationary;
  s.mu = std::move(mu);
  return s;
}

std::vector<Vector> orbit_ideal_generators(const Action& action, const Vector& w, int radius) {
  const Group& G = action.group();
  std::vector<Element> elems;
  if (is_z(action)) {
    for (int k = -radius; k <= radius; ++k) elems.push_back({k});
  } else {
    elems = G.is_finite() ? G.elements() : G.ball(radius);
  }
  std::vector<Vector> out;
  for (const auto& g : elems) {
    Vector gw = action.apply(g, w);
    if (std::find(out.begin(), out.end(), gw) == out.end()) out.push_back(std::move(gw));
  }
  return out;
}

Domain orbit_ideal(const Action& action, const Vector& w) {
  if (is_z(action)) return Domain::shift_orbit(w);
  if (action.group().is_finite()) return Domain::generated(orbit_ideal_generators(action, w, 0));
  // Every nonzero finitely supported function generates all finitely supported
  // functions under translation by an infinite group.
  if (w.is_zero()) return Domain::generated({});
  return Domain::whole();
}

PartialFunctional supply_functional(const FunctionalSupplier& s, const Action& action, const Vector& w) {
  if (!is_positive(w) || w.is_zero()) throw InputError("supplier needs w > 0");
  if (s.mode == FunctionalSupplier::Mode::Stationary && !s.mu) throw InputError("stationary supplier needs a measure");
  PartialFunctional p{Domain::whole(), Functional::counting(), ""};
  if (s.user) {
    auto answer = s.user(action, w);
    if (!answer) throw SupplierContractViolation("user supplier declined w = " + w.to_string());
    p = std::move(*answer);
  } else if (is_z(action)) {
    const Rational d = Functional::density().eval(w);
    if (d > 0) {
      p = make_partial(action.space(), Domain::shift_orbit(w), Functional::density(), "density");
    } else {
      p = make_partial(action.space(), Domain::shift_orbit(w), Functional::counting(), "counting");
    }
  } else if (action.group().is_finite()) {
    const auto pts = orbit_points(action, w);
    p = make_partial(action.space(), orbit_ideal(action, w), Functional::indicator_weights(pts),
                     "orbit-count(" + std::to_string(pts.size()) + ")");
  } else {
    throw UnsupportedSpace("no builtin supplier for " + action.describe());
  }
  validate_supplied(s, action, w, p);
  return p;
}

namespace {

void build(const Action& action, const std::vector<Vector>& F, std::vector<std::size_t> live,
           const FunctionalSupplier& s, std::vector<PartialFunctional>& elems,
           std::vector<std::vector<std::size_t>>& seeds) {
  if (live.empty()) return;
  const Vector w = sum_of(action.space(), F, live);
  PartialFunctional p = supply_functional(s, action, w);
  std::vector<std::size_t> rest;
  for (auto i : live) {
    auto val = try_eval(p, F[i]);
    if (!val) throw SupplierContractViolation("J undefined on an element of F");
    if (*val == 0) rest.push_back(i);
  }
  if (rest.size() == live.size()) throw SupplierContractViolation("J vanishes on every element of F");
  build(action, F, std::move(rest), s, elems, seeds);
  p.label += "#" + std::to_string(elems.size());
  elems.push_back(std::move(p));
  seeds.push_back(std::move(live));
}

}  // namespace

InvariantChain build_invariant_chain(const Action& action, const std::vector<Vector>& F, const FunctionalSupplier& s) {
  if (F.empty()) throw InputError("F must be nonempty");
  for (const auto& v : F)
    if (v.is_zero() || !is_positive(v)) throw InputError("F must consist of nonzero positive vectors");
  std::vector<std::size_t> all(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) all[i] = i;
  std::vector<PartialFunctional> elems;
  std::vector<std::vector<std::size_t>> seeds;
  build(action, F, all, s, elems, seeds);
  // validate_chain keeps this order when the recursion's ≺ claims hold.
  InvariantChain out{validate_chain(action.space(), elems), {}};
  for (const auto& e : out.chain.elements) {
    auto it = std::find_if(elems.begin(), elems.end(), [&](const PartialFunctional& p) { return p.label == e.label; });
    out.seeds.push_back(seeds[static_cast<std::size_t>(it - elems.begin())]);
  }
  auto report = check_invariant_chain(action, F, out);
  if (!report.passed()) {
    for (const auto& c : report.checks)
      if (!c.passed) throw SupplierContractViolation("built chain fails " + c.name + ": " + c.witness);
  }
  return out;
}

Report check_invariant_chain(const Action& action, const std::vector<Vector>& F, const InvariantChain& built) {
  Report r;
  r.subject = "invariant chain of " + std::to_string(built.chain.elements.size()) + " elements";
  auto& a = r.add("(a) every v in F is handled");
  for (const auto& v : F) {
    ++a.checked;
    if (!handling_index(built.chain, v)) a.fail(v.to_string());
  }
  auto& b = r.add("(b) domains are orbit ideals of subset sums");
  if (built.seeds.size() != built.chain.elements.size()) b.fail("seed list does not match the chain");
  for (std::size_t k = 0; k < built.chain.elements.size() && k < built.seeds.size(); ++k) {
    ++b.checked;
    const Vector u = sum_of(action.space(), F, built.seeds[k]);
    if (!same_ideal(built.chain.elements[k].domain, orbit_ideal(action, u), action.space()))
      b.fail(built.chain.elements[k].label + " is not V_{Gu} for u = " + u.to_string());
  }
  return r;
}

Report invariant_mean_on(const Chain& chain, const std::vector<Vector>& E, const Action* action,
                         const std::vector<Element>& elements) {
  Report r;
  r.subject = "finite window of " + std::to_string(E.size()) + " probes";
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = i; j < E.size(); ++j) {
      const Vector s = E[i] + E[j];
      if (!s.is_zero() && !handling_index(chain, s)) throw NotFullAt(s.to_string());
    }
  const MeanPtr P = cm_from_vp(chain_pricing(chain));
  auto leq = [](const Vector& a, const Vector& b) { return is_positive(a) && cone_leq(a, b); };
  auto& cm1 = r.add("CM1");
  auto& cm2 = r.add("CM2");
  auto& cm3 = r.add("CM3");
  auto& inv = r.add("invariance");
  for (const auto& v : E) {
    if (v.is_zero()) continue;
    ++cm3.checked;
    if (P->eval(v, v) != 1) cm3.fail("P(v|v) != 1 at " + v.to_string());
    for (std::size_t i = 0; i < E.size(); ++i) {
      for (std::size_t j = i; j < E.size(); ++j) {
        const Vector s = E[i] + E[j];
        if (!leq(s, v)) continue;
        ++cm1.checked;
        if (P->eval(s, v) != P->eval(E[i], v) + P->eval(E[j], v))
          cm1.fail("u1 = " + E[i].to_string() + ", u2 = " + E[j].to_string() + ", v = " + v.to_string());
      }
    }
    for (const auto& u : E) {
      if (!leq(u, v)) continue;
      for (const auto& w : E) {
        if (w.is_zero() || !leq(v, w)) continue;
        ++cm2.checked;
        if (P->eval(u, w) != P->eval(u, v) * P->eval(v, w))
          cm2.fail("u = " + u.to_string() + ", v = " + v.to_string() + ", w = " + w.to_string());
      }
      if (!action) continue;
      for (const auto& g : elements) {
        const Vector gu = action->apply(g, u);
        if (!leq(gu, v)) continue;
        ++inv.checked;
        if (P->eval(gu, v) != P->eval(u, v))
          inv.fail("g = " + action->group().format(g) + ", u = " + u.to_string() + ", v = " + v.to_string());
      }
    }
  }
  return r;
}

Report indicator_invariance(const Chain& chain, const Action& action) {
  std::vector<Element> pts;
  if (auto gs = action.space().as<GroupSpace>()) {
    pts = gs->group.elements();
  } else if (auto fc = action.space().as<FiniteCoordSpace>()) {
    for (int i = 0; i < fc->size; ++i) pts.push_back({i});
  } else {
    throw UnsupportedSpace("indicator invariance needs a finite point set");
  }
  const std::size_t n = pts.size();
  if (n > 12) throw InputError("indicator invariance is limited to 12 points");
  std::map<Element, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[pts[i]] = i;

  using Mask = std::uint32_t;
  const std::vector<Element> elems = action.group().elements();
  std::vector<std::vector<std::size_t>> perm;
  for (const auto& g : elems) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Vector image = action.apply(g, Vector::delta(action.space(), pts[i]));
      p[i] = index.at(image.sparse_entries()->begin()->first);
    }
    perm.push_back(std::move(p));
  }
  auto indicator = [&](Mask m) {
    SparseEntries e;
    for (std::size_t i = 0; i < n; ++i)
      if (m & (Mask{1} << i)) e[pts[i]] = 1;
    return Vector::sparse(action.space(), std::move(e));
  };
  auto image = [&](std::size_t k, Mask m) {
    Mask out = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m & (Mask{1} << i)) out |= Mask{1} << perm[k][i];
    return out;
  };

  Report r;
  r.subject = "indicator pairs on " + action.describe();
  auto& c = r.add("P(1_gA|1_B) = P(1_A|1_B)");
  for (Mask b = 1; b < (Mask{1} << n); ++b) {
    const Vector vb = indicator(b);
    const auto k = handling_index(chain, vb);
    if (!k) throw NotFullAt(vb.to_string());
    const Functional& J = chain.elements[*k].functional;
    const Rational jb = J.eval(vb);
    std::unordered_map<Mask, PriceValue> value;
    for (Mask a = b;; a = (a - 1) & b) {
      value.emplace(a, PriceValue::ratio(J.eval(indicator(a)), jb));
      if (a == 0) break;
    }
    for (const auto& [a, pa] : value)
      for (std::size_t k = 0; k < elems.size(); ++k) {
        const Mask ga = image(k, a);
        if ((ga & b) != ga) continue;
        ++c.checked;
        if (value.at(ga) != pa)
          c.fail("g = " + action.group().format(elems[k]) + ", A = " + indicator(a).to_string() +
                 ", B = " + vb.to_string());
      }
  }
  return r;
}

}  // namespace conemeans
