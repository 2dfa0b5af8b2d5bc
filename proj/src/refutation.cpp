#include "conemeans/refutation.hpp"

#include "conemeans/action.hpp"
#include "conemeans/errors.hpp"

namespace conemeans {

namespace {

std::string render_step(const RefutationStep& s) { return "r(" + s.argument.to_string() + ", u) = " + to_string(s.value); }

Space space_for(const Group& group) {
  if (group.kind() == Group::Kind::ZPower && group.param() == 1) return Space::periodic_z();
  return Space::group(group);
}

void push(RefutationCertificate& c, std::string tag, Vector arg, Rational value, std::vector<std::size_t> refs,
          std::optional<Element> element = std::nullopt) {
  RefutationStep s{std::move(tag), std::move(arg), std::move(value), std::move(refs), std::move(element), ""};
  s.claim = render_step(s);
  c.steps.push_back(std::move(s));
}

// Steps 0..2: r(u,u) = 1, r(0,u) = 0, r(-u,u) = -1.
void opening(RefutationCertificate& c, const Space& space) {
  push(c, "VP3", c.u, 1, {});
  push(c, "VP1-zero", Vector::zero(space), 0, {0});
  push(c, "VP1-difference", Vector::zero(space) - c.u, -1, {1, 0});
}

// Negative values use U+2212 in claims.
std::string claim_value(const Rational& q) {
  return q < 0 ? "\u2212" + to_string(Rational(-q)) : to_string(q);
}

std::string claim_of(const Rational& a, const Rational& b) { return claim_value(a) + " = " + claim_value(b); }

void close(RefutationCertificate& c, std::size_t a, std::size_t b) {
  RefutationStep s{"contradiction", c.steps[a].argument, c.steps[a].value, {a, b}, std::nullopt, ""};
  s.claim = claim_of(c.steps[a].value, c.steps[b].value);
  c.contradiction = s.claim;
  c.steps.push_back(std::move(s));
}

}  // namespace

RefutationCertificate refute_signed_invariant(const Group& group, const Element& g) {
  if (group.is_identity(g)) throw InputError("refutation needs g != e");
  RefutationCertificate c{group.spec(), g, Vector::zero(space_for(group)), {}, ""};
  const Space space = space_for(group);
  const Action action = Action::left_translation(space);

  if (auto q = group.element_order(g, 1 << 16)) {
    if (space.as<PeriodicZSpace>()) throw InputError("unexpected finite order on Z");
    c.u = Vector::delta(space, group.identity()) - Vector::delta(space, g);
    opening(c, space);
    std::vector<std::size_t> orbit{0};
    Element power = group.identity();
    for (std::int64_t n = 1; n < *q; ++n) {
      power = group.mul(g, power);
      push(c, "INV", action.apply(power, c.u), 1, {0}, power);
      orbit.push_back(c.steps.size() - 1);
    }
    Vector sum = Vector::zero(space);
    Rational total = 0;
    for (auto i : orbit) {
      sum = sum + c.steps[i].argument;
      total += c.steps[i].value;
    }
    push(c, "VP1-sum", sum, total, orbit);
    close(c, c.steps.size() - 1, 1);
    return c;
  }
  if (!space.as<PeriodicZSpace>())
    throw UnsupportedSpace("infinite-order refutation is only implemented on Z");
  const std::int64_t k = g.at(0);
  const auto a = static_cast<std::size_t>(k < 0 ? -k : k);
  std::vector<Rational> period(2 * a, Rational(0));
  period[0] = 1;
  period[a] = -1;
  c.u = z::periodic(period);
  opening(c, space);
  push(c, "INV", action.apply(g, c.u), 1, {0}, g);
  close(c, c.steps.size() - 1, 2);
  return c;
}

std::optional<std::string> replay_refutation(const RefutationCertificate& cert) {
  Group group = Group::parse(cert.group);
  const Space space = space_for(group);
  const Action action = Action::left_translation(space);
  if (cert.u.space() != space) return "u is not in the group's function space";
  if (cert.u.is_zero()) return "u must be nonzero";
  if (cert.steps.empty()) return "no steps";
  const Vector zero = Vector::zero(space);
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    const std::string where = "step " + std::to_string(i) + " (" + s.tag + ")";
    if (s.argument.space() != space) return where + ": argument in the wrong space";
    for (auto r : s.refs)
      if (r >= i) return where + ": forward reference";
    auto ref = [&](std::size_t j) -> const RefutationStep& { return cert.steps[s.refs[j]]; };
    const bool last = i + 1 == cert.steps.size();
    if (s.tag == "contradiction") {
      if (!last) return where + ": contradiction must be the final step";
      if (s.refs.size() != 2) return where + ": needs two references";
      if (ref(0).argument != ref(1).argument) return where + ": arguments differ";
      if (s.argument != ref(0).argument || s.value != ref(0).value) return where + ": must restate its first reference";
      if (ref(0).value == ref(1).value) return where + ": values agree";
      if (s.claim != claim_of(ref(0).value, ref(1).value)) return where + ": claim mismatch";
      if (cert.contradiction != s.claim) return "certificate contradiction does not match the final step";
      return std::nullopt;
    }
    if (last) return "certificate does not end in a contradiction";
    if (s.claim != render_step(s)) return where + ": claim mismatch";
    if (s.tag == "VP3") {
      if (!s.refs.empty() || s.argument != cert.u || s.value != 1) return where + ": must state r(u, u) = 1";
    } else if (s.tag == "VP1-zero") {
      if (s.refs.size() != 1 || ref(0).tag != "VP3" || s.argument != zero || s.value != 0)
        return where + ": must derive r(0, u) = 0 from r(u, u) = 1";
    } else if (s.tag == "VP1-difference") {
      if (s.refs.size() != 2) return where + ": needs two references";
      if (s.argument != ref(0).argument - ref(1).argument) return where + ": argument is not the difference";
      if (s.value != ref(0).value - ref(1).value) return where + ": value is not the difference";
    } else if (s.tag == "VP1-sum") {
      if (s.refs.empty()) return where + ": needs references";
      Vector sum = zero;
      Rational total = 0;
      for (std::size_t j = 0; j < s.refs.size(); ++j) {
        sum = sum + ref(j).argument;
        total += ref(j).value;
      }
      if (s.argument != sum) return where + ": argument is not the sum";
      if (s.value != total) return where + ": value is not the sum";
    } else if (s.tag == "INV") {
      if (s.refs.size() != 1 || !s.element) return where + ": needs one reference and an element";
      if (s.argument != action.apply(*s.element, ref(0).argument)) return where + ": argument is not the translate";
      if (s.value != ref(0).value) return where + ": invariance keeps the value";
    } else {
      return where + ": unknown tag";
    }
  }
  return "certificate does not end in a contradiction";
}

}  // namespace conemeans
