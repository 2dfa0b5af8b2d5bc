#include "conemeans/properties.hpp"

#include <algorithm>

#include "conemeans/errors.hpp"

namespace conemeans {

bool Constraint::admits(const Rational& p) const {
  if (interval) return interval->first <= p && p <= interval->second;
  return std::find(allowed.begin(), allowed.end(), p) != allowed.end();
}

ElementaryProperty invariance_property(const Action& action, const std::vector<Element>& elements,
                                       const std::vector<Vector>& probes) {
  ElementaryProperty prop{"invariance", {}};
  for (const auto& u : probes) {
    if (!is_positive(u)) throw InputError("invariance probe is not positive: " + u.to_string());
    if (u.is_zero()) continue;
    for (const auto& g : elements) {
      Constraint c{u, u + action.apply(g, u), std::nullopt, {Rational(1, 2)},
                   "g = " + action.group().format(g) + ", u = " + u.to_string()};
      prop.constraints.push_back(std::move(c));
    }
  }
  return prop;
}

ElementaryProperty custom_property(std::vector<Constraint> constraints) {
  for (const auto& c : constraints) require_mean_pair(c.u, c.v);
  return {"custom", std::move(constraints)};
}

Report check_property(const PricingPtr& r, const ElementaryProperty& property) {
  Report report;
  report.subject = property.kind + " on " + r->describe();
  auto& c = report.add("cylinders");
  const MeanPtr P = cm_from_vp(r);
  for (const auto& con : property.constraints) {
    try {
      const Rational p = P->eval(con.u, con.v);
      ++c.checked;
      if (!con.admits(p)) c.fail(con.label + ": P(u|v) = " + to_string(p));
    } catch (const NotFullAt&) {
      ++c.skipped;
    }
  }
  return report;
}

Report check_invariance(const PricingPtr& r, const Action& action, const std::vector<Element>& elements,
                        const std::vector<Vector>& probes) {
  Report report = check_property(r, invariance_property(action, elements, probes));
  report.subject = "invariance on " + r->describe();
  static const char* names[] = {"def-inv (i)", "def-inv (ii)", "def-inv (iii)", "def-inv (iv)", "def-inv (v)"};
  for (const char* n : names) report.add(n);
  const Group& G = action.group();
  const std::size_t n = probes.size();
  const std::size_t m = elements.size();
  for (std::size_t k = 0; k < n && m > 0; ++k) {
    const Vector& u = probes[k];
    const Vector& v = probes[(k + 1) % n];
    if (u.is_zero() || v.is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      const Element& g = elements[j];
      const Element& h = elements[(j + 1) % m];
      const Vector gu = action.apply(g, u);
      bool ok[5];
      try {
        const PriceValue base = r->eval(u, v);
        ok[0] = r->eval(gu, v) == base;
        ok[1] = r->eval(u, action.apply(g, v)) == base;
        ok[2] = r->eval(gu, action.apply(h, v)) == base;
        ok[3] = r->eval(u, gu) == PriceValue(1L);
        ok[4] = r->eval(u, u + gu) == PriceValue(Rational(1, 2));
      } catch (const NotFullAt&) {
        for (const char* nm : names) ++report.get(nm).skipped;
        continue;
      }
      const std::string at = "u = " + u.to_string() + ", v = " + v.to_string() + ", g = " + G.format(g) +
                             ", h = " + G.format(h);
      for (int i = 0; i < 5; ++i) {
        auto& c = report.get(names[i]);
        ++c.checked;
        if (!ok[i]) c.fail(at);
      }
    }
  }
  // The five forms are equivalent as universal statements.
  auto& consistency = report.add("def-inv consistency");
  const bool first = report.get(names[0]).passed;
  for (const char* nm : names) {
    const auto& c = report.get(nm);
    ++consistency.checked;
    if (c.checked > 0 && c.passed != first) consistency.fail(std::string(nm) + " disagrees with def-inv (i)");
  }
  return report;
}

Report check_equivariance(const PricingPtr& r, const Action& action, const std::vector<Element>& elements,
                          const std::vector<Vector>& probes) {
  Report report;
  report.subject = "equivariance on " + r->describe();
  auto& c = report.add("r(gu, gv) = r(u, v)");
  const std::size_t n = probes.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vector& u = probes[k];
    const Vector& v = probes[(k + 1) % n];
    for (const auto& g : elements) {
      try {
        const PriceValue a = r->eval(action.apply(g, u), action.apply(g, v));
        const PriceValue b = r->eval(u, v);
        ++c.checked;
        if (a != b)
          c.fail("u = " + u.to_string() + ", v = " + v.to_string() + ", g = " + action.group().format(g) + ": " +
                 a.to_string() + " vs " + b.to_string());
      } catch (const NotFullAt&) {
        ++c.skipped;
      }
    }
  }
  return report;
}

Report check_stationarity(const PricingPtr& r, const Measure& mu, const std::vector<Vector>& probes) {
  Report report;
  report.subject = "stationarity on " + r->describe();
  auto& c = report.add("r(mu*u, v) = r(u, v)");
  const std::size_t n = probes.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vector& u = probes[k];
    const Vector& v = probes[(k + 1) % n];
    try {
      const PriceValue a = r->eval(mu_apply(mu, u), v);
      const PriceValue b = r->eval(u, v);
      ++c.checked;
      if (a != b) c.fail("u = " + u.to_string() + ", v = " + v.to_string() + ": " + a.to_string() + " vs " + b.to_string());
    } catch (const NotFullAt&) {
      ++c.skipped;
    }
  }
  return report;
}

std::vector<Element> probe_elements(const Group& group, int k) {
  std::vector<Element> out;
  if (group.kind() == Group::Kind::ZPower && group.param() == 1) {
    for (int s = 1; s <= k; ++s) {
      out.push_back({s});
      out.push_back({-s});
    }
    return out;
  }
  auto all = group.is_finite() ? group.elements() : group.ball(k);
  for (auto& g : all)
    if (!group.is_identity(g)) out.push_back(std::move(g));
  return out;
}

}  // namespace conemeans
