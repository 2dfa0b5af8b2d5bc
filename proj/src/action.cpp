#include "conemeans/action.hpp"

#include "conemeans/errors.hpp"

namespace conemeans {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  auto r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<Rational> rotate_phase(const std::vector<Rational>& period, std::int64_t k) {
  const auto p = static_cast<std::int64_t>(period.size());
  std::vector<Rational> out(period.size());
  for (std::int64_t i = 0; i < p; ++i) out[static_cast<std::size_t>(i)] = period[static_cast<std::size_t>(floor_mod(i - k, p))];
  return out;
}

}  // namespace

Action Action::left_translation(const Space& space) {
  if (auto gs = space.as<GroupSpace>()) return Action(Kind::LeftTranslation, gs->group, space);
  if (space.as<PeriodicZSpace>()) return Action(Kind::LeftTranslation, Group::zpower(1), space);
  throw UnsupportedSpace("left translation needs a group space or Z, got " + space.describe());
}

Action Action::permutation(const Group& group, int points) {
  bool ok = false;
  switch (group.kind()) {
    case Group::Kind::Symmetric:
    case Group::Kind::Cyclic:
    case Group::Kind::FiniteTable:
      ok = group.param() == points;
      break;
    default:
      break;
  }
  if (!ok) throw UnsupportedSpace("no permutation action of " + group.spec() + " on " + std::to_string(points) + " points");
  return Action(Kind::Permutation, group, Space::finite(points));
}

Action Action::parse(const std::string& spec) {
  if (spec == "shift" || spec == "z") return left_translation(Space::periodic_z());
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("unknown action '" + spec + "'");
  const auto kind = spec.substr(0, colon);
  const Group g = Group::parse(spec.substr(colon + 1));
  if (kind == "regular") return regular(g);
  if (kind == "perm") return permutation(g, g.param());
  throw InputError("unknown action '" + spec + "'");
}

int Action::point_image(const Element& g, int i) const {
  switch (group_.kind()) {
    case Group::Kind::Symmetric:
      return g.at(static_cast<std::size_t>(i));
    case Group::Kind::Cyclic:
      return (g.at(0) + i) % group_.param();
    default:
      return group_.table().at(static_cast<std::size_t>(g.at(0))).at(static_cast<std::size_t>(i));
  }
}

Vector Action::apply(const Element& g, const Vector& v) const {
  if (v.space() != space_) throw SpaceMismatch("action on " + space_.describe() + " applied to " + v.space().describe());
  if (auto p = v.periodic_data()) {
    const std::int64_t k = g.at(0);
    PeriodicZ out;
    out.left = rotate_phase(p->left, k);
    out.right = rotate_phase(p->right, k);
    out.core_start = p->core_start + k;
    out.core = p->core;
    return Vector::periodic(std::move(out));
  }
  SparseEntries out;
  if (kind_ == Kind::Permutation) {
    for (const auto& [x, q] : *v.sparse_entries()) out.emplace(Element{point_image(g, x.at(0))}, q);
  } else {
    for (const auto& [x, q] : *v.sparse_entries()) out.emplace(group_.mul(g, x), q);
  }
  return Vector::sparse(space_, std::move(out));
}

std::string Action::describe() const {
  if (space_.as<PeriodicZSpace>()) return "shift";
  return (kind_ == Kind::Permutation ? "perm:" : "regular:") + group_.spec();
}

}  // namespace conemeans
