#include "conemeans/serialize.hpp"

#include "conemeans/errors.hpp"

namespace conemeans {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Json rational_list(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& q : xs) a.push_back(to_json(q));
  return a;
}

std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

std::string point_name(const Space& space, const Element& x) {
  if (auto gs = space.as<GroupSpace>()) return gs->group.format(x);
  return std::to_string(x.at(0));
}

Element point_from(const Space& space, const std::string& name) {
  if (auto gs = space.as<GroupSpace>()) return gs->group.parse_element(name);
  try {
    std::size_t used = 0;
    long v = std::stol(name, &used);
    if (used != name.size()) throw InputError("bad point '" + name + "'");
    return {static_cast<std::int32_t>(v)};
  } catch (const std::logic_error&) {
    throw InputError("bad point '" + name + "'");
  }
}

Json entries_json(const Space& space, const SparseEntries& e) {
  Json o = Json::object();
  for (const auto& [x, q] : e) o[point_name(space, x)] = to_json(q);
  return o;
}

SparseEntries entries_from(const Space& space, const Json& j) {
  if (!j.is_object()) throw InputError("entries must be an object");
  SparseEntries e;
  for (auto it = j.begin(); it != j.end(); ++it) e[point_from(space, it.key())] += rational_from_json(it.value());
  return e;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(text(j, "rational"));
}

Json to_json(const Group& g) {
  if (g.kind() == Group::Kind::FiniteTable) return Json{{"table", g.table()}};
  return g.spec();
}

Group group_from_json(const Json& j) {
  if (j.is_string()) return Group::parse(j.get<std::string>());
  if (j.is_object() && j.contains("table")) {
    try {
      return Group::finite_table(j.at("table").get<std::vector<std::vector<int>>>());
    } catch (const Json::exception& e) {
      throw InputError(std::string("bad group table: ") + e.what());
    }
  }
  throw InputError("group must be a spec string or {\"table\": ...}");
}

Json to_json(const Space& s) {
  if (auto fc = s.as<FiniteCoordSpace>()) return {{"kind", "finite"}, {"size", fc->size}};
  if (auto gs = s.as<GroupSpace>()) return {{"kind", "group"}, {"group", to_json(gs->group)}};
  if (s.as<PeriodicZSpace>()) return {{"kind", "epz"}};
  const auto& pc = *s.as<PolyConeSpace>();
  Json gens = Json::array();
  for (const auto& g : pc.generators) gens.push_back(rational_list(g));
  return {{"kind", "polycone"}, {"dim", pc.dim}, {"generators", gens}};
}

Space space_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "epz" || s == "Z") return Space::periodic_z();
    if (s.size() > 1 && s[0] == 'X') return Space::finite(std::stoi(s.substr(1)));
    if (s.rfind("finite:", 0) == 0) return Space::finite(std::stoi(s.substr(7)));
    if (s.rfind("group:", 0) == 0) return Space::group(Group::parse(s.substr(6)));
    throw InputError("unknown space '" + s + "'");
  }
  const auto kind = text(field(j, "kind"), "space kind");
  if (kind == "finite") return Space::finite(field(j, "size").get<int>());
  if (kind == "group") return Space::group(group_from_json(field(j, "group")));
  if (kind == "epz") return Space::periodic_z();
  if (kind == "polycone") {
    std::vector<std::vector<Rational>> gens;
    for (const auto& g : field(j, "generators")) gens.push_back(rationals_from(g));
    return Space::polycone(field(j, "dim").get<int>(), std::move(gens));
  }
  throw InputError("unknown space kind '" + kind + "'");
}

Json to_json(const Vector& v, bool with_space) {
  Json j = Json::object();
  if (with_space) j["space"] = to_json(v.space());
  if (auto s = v.sparse_entries()) {
    j["entries"] = entries_json(v.space(), *s);
  } else if (auto p = v.periodic_data()) {
    j["left"] = rational_list(p->left);
    j["core_start"] = p->core_start;
    j["core"] = rational_list(p->core);
    j["right"] = rational_list(p->right);
  } else {
    j["values"] = rational_list(*v.dense_values());
  }
  return j;
}

Vector vector_from_json(const Json& j, const Space* context) {
  if (!j.is_object()) throw InputError("vector must be a JSON object");
  const Space space = j.contains("space") ? space_from_json(j.at("space"))
                      : context           ? *context
                                          : throw InputError("vector has no space");
  if (space.as<PeriodicZSpace>()) {
    std::vector<Rational> left{Rational(0)}, core, right{Rational(0)};
    std::int64_t start = 0;
    if (j.contains("period")) left = right = rationals_from(j.at("period"));
    if (j.contains("left")) left = rationals_from(j.at("left"));
    if (j.contains("right")) right = rationals_from(j.at("right"));
    if (j.contains("core")) core = rationals_from(j.at("core"));
    if (j.contains("core_start")) start = j.at("core_start").get<std::int64_t>();
    return z::make(std::move(left), start, std::move(core), std::move(right));
  }
  if (j.contains("values")) return Vector::dense(space, rationals_from(j.at("values")));
  if (space.as<PolyConeSpace>()) throw InputError("PolyCone vectors need 'values'");
  return Vector::sparse(space, entries_from(space, field(j, "entries")));
}

Json to_json(const Functional& f, const Space& space) {
  if (auto w = f.as<WeightedFunctional>()) return {{"kind", "weighted"}, {"weights", entries_json(space, w->weights)}};
  if (f.as<CountingFunctional>()) return {{"kind", "counting"}};
  if (f.as<DensityFunctional>()) return {{"kind", "density"}};
  return {{"kind", "dual"}, {"values", rational_list(f.as<DualFunctional>()->values)}};
}

Functional functional_from_json(const Json& j, const Space& space) {
  const auto kind = text(field(j, "kind"), "functional kind");
  if (kind == "weighted") return Functional::weighted(entries_from(space, field(j, "weights")));
  if (kind == "counting") return Functional::counting();
  if (kind == "density") return Functional::density();
  if (kind == "dual") return Functional::dual(rationals_from(field(j, "values")));
  throw InputError("unknown functional kind '" + kind + "'");
}

Json to_json(const Domain& d) {
  if (d.as<WholeDomain>()) return {{"kind", "whole"}};
  if (auto g = d.as<GeneratedDomain>()) {
    Json gens = Json::array();
    for (const auto& v : g->generators) gens.push_back(to_json(v, false));
    return {{"kind", "ideal"}, {"generators", gens}};
  }
  return {{"kind", "shift_orbit"}, {"seed", to_json(d.as<ShiftOrbitDomain>()->seed, false)}};
}

Domain domain_from_json(const Json& j, const Space& space) {
  const auto kind = text(field(j, "kind"), "domain kind");
  if (kind == "whole") return Domain::whole();
  if (kind == "ideal") {
    std::vector<Vector> gens;
    for (const auto& g : field(j, "generators")) gens.push_back(vector_from_json(g, &space));
    return Domain::generated(std::move(gens));
  }
  if (kind == "shift_orbit") return Domain::shift_orbit(vector_from_json(field(j, "seed"), &space));
  if (kind == "finitely_supported") return Domain::finitely_supported_z();
  throw InputError("unknown domain kind '" + kind + "'");
}

Json to_json(const PartialFunctional& p, const Space& space) {
  return {{"label", p.label}, {"domain", to_json(p.domain)}, {"functional", to_json(p.functional, space)}};
}

PartialFunctional partial_from_json(const Json& j, const Space& space) {
  const std::string label = j.contains("label") ? text(j.at("label"), "label") : "";
  return make_partial(space, domain_from_json(field(j, "domain"), space),
                      functional_from_json(field(j, "functional"), space), label);
}

Json to_json(const Chain& c) {
  Json elems = Json::array();
  for (const auto& e : c.elements) elems.push_back(to_json(e, c.space));
  return {{"space", to_json(c.space)}, {"elements", elems}};
}

Chain chain_from_json(const Json& j) {
  const Space space = space_from_json(field(j, "space"));
  std::vector<PartialFunctional> elems;
  for (const auto& e : field(j, "elements")) elems.push_back(partial_from_json(e, space));
  return validate_chain(space, std::move(elems));
}

Json to_json(const Measure& m) {
  return {{"group", to_json(m.group())}, {"weights", entries_json(Space::group(m.group()), m.weights())}};
}

Measure measure_from_json(const Json& j) {
  const Group g = group_from_json(field(j, "group"));
  if (j.contains("builtin")) return Measure::builtin(g, text(j.at("builtin"), "builtin"));
  return Measure(g, entries_from(Space::group(g), field(j, "weights")));
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json o{{"name", c.name}, {"passed", c.passed}, {"checked", c.checked}, {"skipped", c.skipped}};
    if (!c.witness.empty()) o["witness"] = c.witness;
    if (!c.note.empty()) o["note"] = c.note;
    checks.push_back(std::move(o));
  }
  return {{"subject", r.subject}, {"passed", r.passed()}, {"checks", checks}};
}

Json to_json(const ObstructionCertificate& c) {
  const Space gs = Space::group(Group::parse(c.group));
  return {{"type", "obstruction"},
          {"group", c.group},
          {"measure", entries_json(gs, c.measure)},
          {"z", to_json(c.z)},
          {"rho_upper", to_json(c.rho_upper)},
          {"N", c.N},
          {"z_rho", to_json(c.z_rho)},
          {"geometric_bound", to_json(c.geometric_bound)},
          {"max_green", to_json(c.max_green)},
          {"green_points", c.green_points},
          {"identity_holds", c.identity_holds},
          {"identity_points", c.identity_points},
          {"decay_holds", c.decay_holds},
          {"lower_bounds_hold", c.lower_bounds_hold},
          {"contradiction", c.contradiction}};
}

ObstructionCertificate obstruction_from_json(const Json& j) {
  try {
    ObstructionCertificate c;
    c.group = text(field(j, "group"), "group");
    c.measure = entries_from(Space::group(Group::parse(c.group)), field(j, "measure"));
    c.z = rational_from_json(field(j, "z"));
    c.rho_upper = rational_from_json(field(j, "rho_upper"));
    c.N = field(j, "N").get<unsigned>();
    c.z_rho = rational_from_json(field(j, "z_rho"));
    c.geometric_bound = rational_from_json(field(j, "geometric_bound"));
    c.max_green = rational_from_json(field(j, "max_green"));
    c.green_points = field(j, "green_points").get<std::size_t>();
    c.identity_holds = field(j, "identity_holds").get<bool>();
    c.identity_points = field(j, "identity_points").get<std::size_t>();
    c.decay_holds = field(j, "decay_holds").get<bool>();
    c.lower_bounds_hold = field(j, "lower_bounds_hold").get<bool>();
    c.contradiction = text(field(j, "contradiction"), "contradiction");
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad obstruction certificate: ") + e.what());
  }
}

Json to_json(const RefutationCertificate& c) {
  const Group g = Group::parse(c.group);
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json o{{"tag", s.tag}, {"argument", to_json(s.argument, false)}, {"value", to_json(s.value)}, {"refs", s.refs},
           {"claim", s.claim}};
    if (s.element) o["element"] = g.format(*s.element);
    steps.push_back(std::move(o));
  }
  return {{"type", "refutation"}, {"group", c.group},  {"g", g.format(c.g)},
          {"u", to_json(c.u, false)}, {"steps", steps}, {"contradiction", c.contradiction}};
}

RefutationCertificate refutation_from_json(const Json& j) {
  try {
    const std::string group = text(field(j, "group"), "group");
    const Group g = Group::parse(group);
    const Space space = (g.kind() == Group::Kind::ZPower && g.param() == 1) ? Space::periodic_z() : Space::group(g);
    std::vector<RefutationStep> steps;
    for (const auto& s : field(j, "steps")) {
      std::optional<Element> element;
      if (s.contains("element")) element = g.parse_element(text(s.at("element"), "element"));
      steps.push_back(RefutationStep{text(field(s, "tag"), "tag"), vector_from_json(field(s, "argument"), &space),
                                     rational_from_json(field(s, "value")),
                                     field(s, "refs").get<std::vector<std::size_t>>(), element,
                                     text(field(s, "claim"), "claim")});
    }
    return RefutationCertificate{group, g.parse_element(text(field(j, "g"), "g")),
                                 vector_from_json(field(j, "u"), &space), std::move(steps),
                                 text(field(j, "contradiction"), "contradiction")};
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad refutation certificate: ") + e.what());
  }
}

Json to_json(const CPTable& t) {
  Json entries = Json::array();
  for (const auto& [key, q] : t.values())
    entries.push_back({{"A", CPTable::members(key.first)}, {"B", CPTable::members(key.second)}, {"P", to_json(q)}});
  return {{"ground", t.ground()}, {"entries", entries}};
}

CPTable cptable_from_json(const Json& j) {
  try {
    const int ground = field(j, "ground").get<int>();
    if (j.contains("measures")) {
      std::vector<std::vector<Rational>> ms;
      for (const auto& m : j.at("measures")) ms.push_back(rationals_from(m));
      return CPTable::from_measure_chain(ground, ms);
    }
    CPTable t(ground);
    for (const auto& e : field(j, "entries"))
      t.set(CPTable::mask_of(field(e, "A").get<std::vector<int>>()), CPTable::mask_of(field(e, "B").get<std::vector<int>>()),
            rational_from_json(field(e, "P")));
    return t;
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad CP table: ") + e.what());
  }
}

}  // namespace conemeans
