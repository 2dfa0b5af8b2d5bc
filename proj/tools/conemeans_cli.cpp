// conemeans: batch front end over the library.
// Exit codes: 0 all checks pass, 2 a mathematical check failed, 1 bad input or resource error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "conemeans/errors.hpp"
#include "conemeans/invariant.hpp"
#include "conemeans/lattice.hpp"
#include "conemeans/pricing.hpp"
#include "conemeans/properties.hpp"
#include "conemeans/sampler.hpp"
#include "conemeans/serialize.hpp"

using namespace conemeans;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kMathFailure = 2;

struct Options {
  std::string group = "z:1";
  std::string mu = "srw";
  std::string z = "9/8";
  unsigned N = 10;
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  std::string out;
  std::string format = "json";
  std::size_t support_cap = 0;
  std::string backend = "lex";
  std::string space = "X6";
  std::string partition;
  std::string u, v;
  std::string g = "1";
  std::string t = "1";
  std::string rho;
  std::string input;
  std::string kind = "invariance";
  std::string action = "regular";
  int window = 8;
  int shifts = 10;
};

/// Result of one subcommand: a JSON document, optional CSV rows, and an exit code.
struct Output {
  Json json;
  std::vector<std::vector<std::string>> csv;
  int code = kOk;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

/// Inline JSON if it starts with '{' or '[', otherwise a file path.
Json json_arg(const std::string& arg, const std::string& what) {
  if (arg.empty()) throw InputError("missing " + what);
  if (arg[0] == '{' || arg[0] == '[') return parse_json_text(arg, what);
  return parse_json_text(read_file(arg), what);
}

Json input_json(const Options& o) { return json_arg(o.input, "--input"); }

std::size_t cap_of(const Options& o) { return o.support_cap ? o.support_cap : default_support_cap(); }

Rational rational_arg(const std::string& s, const char* flag) {
  try {
    return parse_rational(s);
  } catch (const InputError& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

SamplerConfig sampler_config(const Options& o) {
  SamplerConfig c;
  c.seed = o.seed;
  c.count = o.samples;
  return c;
}

Group group_arg(const Options& o) { return Group::parse(o.group); }

Measure measure_arg(const Options& o) {
  const Group g = group_arg(o);
  if (std::filesystem::exists(o.mu)) {
    Json j = parse_json_text(read_file(o.mu), "--mu");
    if (!j.contains("group")) j["group"] = to_json(g);
    return measure_from_json(j);
  }
  return Measure::builtin(g, o.mu);
}

/// "X6" style finite coordinate spaces, or any JSON space.
Space space_arg(const Options& o) {
  if (!o.space.empty() && (o.space[0] == '{' || std::filesystem::exists(o.space)))
    return space_from_json(json_arg(o.space, "--space"));
  return space_from_json(Json(o.space));
}

int finite_size(const Space& s) {
  if (auto fc = s.as<FiniteCoordSpace>()) return fc->size;
  throw InputError("this backend needs a finite coordinate space such as X6");
}

/// "0,1|2,3|4,5"; by default consecutive pairs.
std::vector<std::vector<int>> partition_arg(const Options& o, int n) {
  std::vector<std::vector<int>> blocks;
  if (o.partition.empty()) {
    for (int i = 0; i < n; i += 2) {
      blocks.push_back({i});
      if (i + 1 < n) blocks.back().push_back(i + 1);
    }
    return blocks;
  }
  std::stringstream ss(o.partition);
  std::string block;
  while (std::getline(ss, block, '|')) {
    std::vector<int> b;
    std::stringstream bs(block);
    std::string item;
    while (std::getline(bs, item, ',')) {
      try {
        b.push_back(std::stoi(item));
      } catch (const std::logic_error&) {
        throw InputError("bad --partition entry '" + item + "'");
      }
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

Chain chain_arg(const Options& o) {
  if (o.backend == "lex") {
    const int n = finite_size(space_arg(o));
    return lexicographic_chain(n, partition_arg(o, n));
  }
  if (o.backend == "rightmost") return rightmost_z_chain(o.window);
  if (o.backend == "density") return density_z_chain();
  if (o.backend == "chain") return chain_from_json(input_json(o));
  throw InputError("backend '" + o.backend + "' has no chain");
}

PricingPtr pricing_arg(const Options& o) {
  if (o.backend == "quotient") {
    const Space space = space_arg(o);
    const int n = finite_size(space);
    SparseEntries w;
    for (int i = 0; i < n; ++i) w[{i}] = 1;
    return faithful_quotient(space, Functional::weighted(std::move(w)));
  }
  if (o.backend == "cp") return vp_from_cm(cp_to_cm(cptable_from_json(input_json(o))));
  return chain_pricing(chain_arg(o));
}

Vector vector_arg(const std::string& arg, const char* flag, const Space& space) {
  return vector_from_json(json_arg(arg, flag), &space);
}

void add_report_csv(Output& out, const Report& r) {
  if (out.csv.empty()) out.csv.push_back({"subject", "check", "passed", "checked", "skipped", "witness"});
  for (const auto& c : r.checks)
    out.csv.push_back({r.subject, c.name, c.passed ? "true" : "false", std::to_string(c.checked),
                       std::to_string(c.skipped), c.witness});
}

Output report_output(const Report& r) {
  Output out;
  out.json = to_json(r);
  add_report_csv(out, r);
  out.code = r.passed() ? kOk : kMathFailure;
  return out;
}

Output merge_reports(const std::vector<Report>& reports) {
  Output out;
  out.json = Json::array();
  bool ok = true;
  for (const auto& r : reports) {
    out.json.push_back(to_json(r));
    add_report_csv(out, r);
    ok = ok && r.passed();
  }
  out.code = ok ? kOk : kMathFailure;
  return out;
}

std::vector<Vector> probe_vectors(const Space& space, const Options& o) {
  Sampler s(space, sampler_config(o));
  std::vector<Vector> probes;
  for (std::size_t i = 0; i < o.samples; ++i) probes.push_back(s.nonzero_positive_vector());
  return probes;
}

// ---- subcommands ----

Output vp_check(const Options& o) { return report_output(check_axioms(pricing_arg(o), sampler_config(o))); }

Output vp_eval(const Options& o) {
  const PricingPtr r = pricing_arg(o);
  const Vector u = vector_arg(o.u, "--u", r->space());
  const Vector v = vector_arg(o.v, "--v", r->space());
  const PriceValue value = r->eval(u, v);
  Output out;
  out.json = {{"u", to_json(u, false)}, {"v", to_json(v, false)}, {"r", value.to_string()}};
  out.csv = {{"u", "v", "r"}, {u.to_string(), v.to_string(), value.to_string()}};
  return out;
}

Output vp_roundtrip(const Options& o) {
  const PricingPtr r = pricing_arg(o);
  return merge_reports({check_roundtrip(r, sampler_config(o)), check_roundtrip(cm_from_vp(r), sampler_config(o))});
}

Output chain_validate(const Options& o) {
  const Chain c = chain_arg(o);
  Output out;
  out.json = to_json(c);
  out.csv.push_back({"index", "label", "domain", "functional"});
  for (std::size_t i = 0; i < c.elements.size(); ++i)
    out.csv.push_back({std::to_string(i), c.elements[i].label, c.elements[i].domain.describe(),
                       c.elements[i].functional.describe()});
  return out;
}

Output chain_fullness(const Options& o) {
  const Chain c = chain_arg(o);
  const FullnessResult f = check_fullness(c);
  Output out;
  out.json = {{"full", f.full}, {"method", f.method}};
  std::string witness;
  if (f.witness) {
    Json w = Json::array();
    for (const auto& x : *f.witness) {
      const std::string name = std::to_string(x.at(0));
      w.push_back(name);
      witness += (witness.empty() ? "" : " ") + name;
    }
    out.json["witness"] = w;
  }
  out.csv = {{"full", "method", "witness"}, {f.full ? "true" : "false", f.method, witness}};
  out.code = f.full ? kOk : kMathFailure;
  return out;
}

Action action_arg(const Options& o) {
  const Group g = group_arg(o);
  if (o.action == "regular") return Action::regular(g);
  if (o.action == "perm") return Action::permutation(g, g.param());
  if (o.action == "shift") return Action::parse("shift");
  throw InputError("unknown --action '" + o.action + "'");
}

std::vector<Vector> indicator_family(const Space& space, const std::vector<Element>& points) {
  std::vector<Vector> F;
  const std::size_t n = points.size();
  if (n > 12) throw InputError("indicator family needs at most 12 points");
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    SparseEntries e;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) e[points[i]] = 1;
    F.push_back(Vector::sparse(space, std::move(e)));
  }
  return F;
}

std::vector<Element> action_points(const Action& a) {
  if (auto gs = a.space().as<GroupSpace>()) return gs->group.elements();
  std::vector<Element> pts;
  for (int i = 0; i < finite_size(a.space()); ++i) pts.push_back({i});
  return pts;
}

Output invariant_build(const Options& o) {
  const Action a = action_arg(o);
  std::vector<Vector> F;
  if (!o.input.empty()) {
    for (const auto& j : input_json(o)) F.push_back(vector_from_json(j, &a.space()));
  } else {
    F = indicator_family(a.space(), action_points(a));
  }
  const InvariantChain built = build_invariant_chain(a, F, FunctionalSupplier::builtin_invariant());
  Report check = check_invariant_chain(a, F, built);
  const Report mean = o.input.empty() ? indicator_invariance(built.chain, a)
                                      : invariant_mean_on(built.chain, F, &a, a.group().elements());
  for (const auto& c : mean.checks) check.checks.push_back(c);
  Output out = report_output(check);
  out.json = {{"chain", to_json(built.chain)}, {"report", to_json(check)}};
  return out;
}

Output invariant_zdemo(const Options& o) {
  const PricingPtr r = chain_pricing(density_z_chain());
  const Action shift = Action::parse("shift");
  const Report inv = check_invariance(r, shift, probe_elements(Group::zpower(1), o.shifts),
                                      probe_vectors(r->space(), o));
  const Vector one = z::constant(1);
  const Vector even = z::periodic({Rational(1), Rational(0)});
  const PriceValue a = r->eval(z::delta(0), one);
  const PriceValue b = r->eval(even, one);
  Report witness;
  witness.subject = "density chain witnesses";
  auto& c1 = witness.add("r(delta_0, 1_Z) = 0");
  c1.checked = 1;
  if (a != PriceValue(0)) c1.fail(a.to_string());
  auto& c2 = witness.add("r(1_even, 1_Z) = 1/2");
  c2.checked = 1;
  if (b != PriceValue(make_rational(1, 2))) c2.fail(b.to_string());
  return merge_reports({inv, witness});
}

Output property_check(const Options& o) {
  const PricingPtr r = pricing_arg(o);
  const auto probes = probe_vectors(r->space(), o);
  if (o.kind == "stationarity") return report_output(check_stationarity(r, measure_arg(o), probes));
  const Action a = r->space().as<PeriodicZSpace>() ? Action::parse("shift") : action_arg(o);
  const auto elements = probe_elements(a.group(), o.shifts);
  if (o.kind == "invariance") return report_output(check_invariance(r, a, elements, probes));
  if (o.kind == "equivariance") return report_output(check_equivariance(r, a, elements, probes));
  throw InputError("unknown --kind '" + o.kind + "'");
}

Output walk_power(const Options& o) {
  const Measure mu = measure_arg(o);
  const Measure p = conv_power(mu, o.N, cap_of(o));
  Output out;
  out.json = to_json(p);
  out.json["n"] = o.N;
  out.csv.push_back({"element", "probability"});
  for (const auto& [x, q] : p.weights()) out.csv.push_back({p.group().format(x), to_string(q)});
  return out;
}

Output walk_rho(const Options& o) {
  const Measure mu = measure_arg(o);
  const auto bounds = spectral_radius_bounds(mu, o.N, cap_of(o));
  Output out;
  Json rows = Json::array();
  out.csv.push_back({"n", "p2n", "lower"});
  for (const auto& b : bounds) {
    std::ostringstream d;
    d.precision(12);
    d << b.lower;
    rows.push_back({{"n", b.n}, {"p2n", to_json(b.p2n)}, {"lower", d.str()}});
    out.csv.push_back({std::to_string(b.n), to_string(b.p2n), d.str()});
  }
  const bool increasing = strictly_increasing(bounds);
  out.json = {{"group", mu.group().spec()}, {"bounds", rows}, {"strictly_increasing", increasing}};
  bool ok = true;
  if (!o.rho.empty()) {
    const bool below = bounded_by(bounds, rational_arg(o.rho, "--rho"));
    out.json["rho"] = o.rho;
    out.json["bounded_by_rho"] = below;
    ok = below;
  }
  out.code = ok ? kOk : kMathFailure;
  return out;
}

Output walk_green(const Options& o) {
  const Measure mu = measure_arg(o);
  const Rational z = rational_arg(o.z, "--z");
  const Vector G = green_truncated(mu, z, o.N, cap_of(o));
  const GreenIdentity id = green_identity_check(mu, z, o.N, cap_of(o));
  Output out;
  out.json = {{"z", to_json(z)}, {"N", o.N}, {"green", to_json(G, false)}, {"identity_holds", id.holds},
              {"identity_points", id.points}};
  out.csv.push_back({"element", "green"});
  for (const auto& [x, q] : *G.sparse_entries()) out.csv.push_back({mu.group().format(x), to_string(q)});
  out.code = id.holds ? kOk : kMathFailure;
  return out;
}

Rational rho_for(const Options& o, const Group& g) {
  if (!o.rho.empty()) return rational_arg(o.rho, "--rho");
  if (g.kind() == Group::Kind::Free && o.mu == "srw") return kesten_upper(g.param());
  throw InputError("--rho is required unless the walk is SRW on a free group");
}

Output walk_obstruct(const Options& o) {
  const Measure mu = measure_arg(o);
  const ObstructionCertificate cert =
      obstruction_certificate(mu, rational_arg(o.z, "--z"), rho_for(o, mu.group()), o.N, cap_of(o));
  Output out;
  out.json = to_json(cert);
  out.csv = {{"group", "z", "rho_upper", "N", "geometric_bound", "max_green", "contradiction"},
             {cert.group, to_string(cert.z), to_string(cert.rho_upper), std::to_string(cert.N),
              to_string(cert.geometric_bound), to_string(cert.max_green), cert.contradiction}};
  return out;
}

Output harmonic_check(const Options& o) {
  const Measure mu = measure_arg(o);
  const Group& g = mu.group();
  const bool on_z = g.kind() == Group::Kind::ZPower && g.param() == 1;
  const Space space = on_z ? Space::periodic_z() : Space::group(g);
  const Action a = on_z ? Action::parse("shift") : Action::regular(g);
  PartialFunctional J = [&] {
    if (!o.input.empty()) return partial_from_json(input_json(o), space);
    if (on_z) return make_partial(space, Domain::whole(), Functional::density(), "density");
    if (g.is_finite()) return make_partial(space, Domain::whole(), Functional::counting(), "counting");
    throw InputError("harmonic check on " + g.spec() + " needs --input with a partial functional");
  }();
  const Vector v = !o.v.empty() ? vector_arg(o.v, "--v", space)
                   : on_z      ? z::periodic({Rational(1), Rational(0)})
                               : Vector::delta(space, g.identity());
  const auto probes = g.is_finite() ? g.elements() : g.ball(o.shifts > 3 ? 3 : o.shifts);
  return report_output(harmonic_from_functional(J, a, v, probes, mu, rational_arg(o.t, "--t")));
}

Output cm_extend(const Options& o) {
  const PricingPtr r = pricing_arg(o);
  const Vector u = vector_arg(o.u, "--u", r->space());
  const Vector v = vector_arg(o.v, "--v", r->space());
  const MeanPtr P = cm_from_vp(r);
  const Rational value = extend_cm_global(*P, u, v);
  const BandProjection band = band_projection(v, u);
  Output out;
  out.json = {{"u", to_json(u, false)},
              {"v", to_json(v, false)},
              {"P", to_json(value)},
              {"n_star", band.n_star.get_str()},
              {"projection", to_json(band.projection, false)}};
  out.csv = {{"u", "v", "P", "n_star"}, {u.to_string(), v.to_string(), to_string(value), band.n_star.get_str()}};
  return out;
}

Output cp_validate_cmd(const Options& o) { return report_output(cp_validate(cptable_from_json(input_json(o)))); }

Output cp_lift(const Options& o) {
  const CPTable t = cptable_from_json(input_json(o));
  const Report valid = cp_validate(t);
  if (!valid.passed()) return report_output(valid);
  const MeanPtr P = cp_to_cm(t);
  const Space space = P->space();
  const int n = t.ground();
  auto indicator = [&](CPTable::Mask m) {
    SparseEntries e;
    for (int i : CPTable::members(m)) e[{i}] = 1;
    return Vector::sparse(space, std::move(e));
  };
  Report r;
  r.subject = "lift of CP table on " + std::to_string(n) + " points";
  auto& c = r.add("P(1_A|1_B) = table(A|B)");
  Json rows = Json::array();
  for (CPTable::Mask b = 1; b < (1u << n); ++b) {
    for (CPTable::Mask a = 0; a < (1u << n); ++a) {
      if ((a & b) != a) continue;
      const Rational lifted = P->eval(indicator(a), indicator(b));
      ++c.checked;
      if (lifted != t.get(a, b))
        c.fail("A = " + indicator(a).to_string() + ", B = " + indicator(b).to_string() + ": " + to_string(lifted) +
               " vs " + to_string(t.get(a, b)));
      rows.push_back({{"A", CPTable::members(a)}, {"B", CPTable::members(b)}, {"P", to_json(lifted)}});
    }
  }
  Output out = report_output(r);
  out.json = {{"lift", rows}, {"report", to_json(r)}};
  return out;
}

Output negate_cmd(const Options& o) {
  const Group g = group_arg(o);
  const RefutationCertificate cert = refute_signed_invariant(g, g.parse_element(o.g));
  Output out;
  out.json = to_json(cert);
  out.csv.push_back({"index", "tag", "claim"});
  for (std::size_t i = 0; i < cert.steps.size(); ++i)
    out.csv.push_back({std::to_string(i), cert.steps[i].tag, cert.steps[i].claim});
  return out;
}

Output certificate_replay(const Options& o) {
  const Json j = input_json(o);
  const std::string type = j.value("type", "");
  Output out;
  if (type == "obstruction") {
    const bool ok = replay_obstruction(obstruction_from_json(j), cap_of(o));
    out.json = {{"type", type}, {"replayed", ok}};
    out.code = ok ? kOk : kMathFailure;
  } else if (type == "refutation") {
    const auto problem = replay_refutation(refutation_from_json(j));
    out.json = {{"type", type}, {"replayed", !problem}};
    if (problem) out.json["problem"] = *problem;
    out.code = problem ? kMathFailure : kOk;
  } else {
    throw InputError("certificate has unknown type '" + type + "'");
  }
  out.csv = {{"type", "replayed"}, {type, out.code == kOk ? "true" : "false"}};
  return out;
}

void emit(const Options& o, const Output& out) {
  std::ostringstream text;
  if (o.format == "csv" && !out.csv.empty()) {
    for (const auto& row : out.csv) {
      for (std::size_t i = 0; i < row.size(); ++i) text << (i ? "," : "") << csv_cell(row[i]);
      text << "\n";
    }
  } else {
    text << out.json.dump(2) << "\n";
  }
  if (o.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write '" + o.out + "'");
    f << text.str();
  }
}

int fail_with(const Options& o, int code, const std::string& kind, const std::string& message, Json extra = {}) {
  Json j = {{"error", kind}, {"message", message}};
  if (!extra.is_null()) j["witness"] = std::move(extra);
  if (code == kMathFailure) {
    Output out;
    out.json = j;
    out.csv = {{"error", "message"}, {kind, message}};
    try {
      emit(o, out);
    } catch (const InputError&) {
    }
  }
  std::cerr << "conemeans: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact vector pricings, conditional means and random-walk certificates"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--group", o.group, "group spec, e.g. z:1, cyclic:6, free:2, sym:3");
    cmd->add_option("--mu", o.mu, "builtin measure (srw|lazy|uniform|dirac) or JSON file");
    cmd->add_option("--z", o.z, "rational z");
    cmd->add_option("--N", o.N, "truncation or convolution power");
    cmd->add_option("--seed", o.seed, "sampler seed");
    cmd->add_option("--samples", o.samples, "sample count");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--support-cap", o.support_cap, "convolution support cap");
    cmd->add_option("--backend", o.backend, "lex|quotient|rightmost|density|chain|cp");
    cmd->add_option("--space", o.space, "space, e.g. X6, epz, or JSON");
    cmd->add_option("--partition", o.partition, "lex blocks, e.g. 0,1|2,3|4,5");
    cmd->add_option("--u", o.u, "vector JSON or file");
    cmd->add_option("--v", o.v, "vector JSON or file");
    cmd->add_option("--g", o.g, "group element");
    cmd->add_option("--t", o.t, "eigenvalue t");
    cmd->add_option("--rho", o.rho, "rational spectral radius upper bound");
    cmd->add_option("--input", o.input, "input JSON file or inline JSON");
    cmd->add_option("--kind", o.kind, "invariance|equivariance|stationarity");
    cmd->add_option("--action", o.action, "regular|perm|shift");
    cmd->add_option("--window", o.window, "rightmost chain window");
    cmd->add_option("--shifts", o.shifts, "probe radius for group elements");
  };

  std::function<Output(const Options&)> run;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<Output(const Options&)> f) {
    auto* cmd = parent->add_subcommand(name, help);
    common(cmd);
    cmd->callback([&run, f] { run = f; });
  };
  auto group_cmd = [&](const std::string& name, const std::string& help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->require_subcommand(1);
    return cmd;
  };

  auto* vp = group_cmd("vp", "vector pricing checks");
  leaf(vp, "check", "axiom report", vp_check);
  leaf(vp, "eval", "evaluate r(u, v)", vp_eval);
  leaf(vp, "roundtrip", "VP/CM round trip", vp_roundtrip);
  auto* chain = group_cmd("chain", "chains of partial functionals");
  leaf(chain, "validate", "validate and order a chain", chain_validate);
  leaf(chain, "fullness", "fullness check", chain_fullness);
  auto* inv = group_cmd("invariant", "invariant chains");
  leaf(inv, "build", "build an invariant chain on a finite group", invariant_build);
  leaf(inv, "zdemo", "density chain on Z", invariant_zdemo);
  auto* prop = group_cmd("property", "elementary properties");
  leaf(prop, "check", "invariance, equivariance or stationarity", property_check);
  auto* walk = group_cmd("walk", "random walks");
  leaf(walk, "power", "convolution power", walk_power);
  leaf(walk, "rho", "spectral radius lower bounds", walk_rho);
  leaf(walk, "green", "truncated Green function", walk_green);
  leaf(walk, "obstruct", "obstruction certificate", walk_obstruct);
  auto* harm = group_cmd("harmonic", "harmonic functions from functionals");
  leaf(harm, "check", "check t-harmonicity", harmonic_check);
  auto* cm = group_cmd("cm", "conditional means");
  leaf(cm, "extend", "global extension of a conditional mean", cm_extend);
  auto* cp = group_cmd("cp", "conditional probability tables");
  leaf(cp, "validate", "validate a CP table", cp_validate_cmd);
  leaf(cp, "lift", "lift a CP table to step functions", cp_lift);
  leaf(&app, "negate", "refute signed invariant pricings", negate_cmd);
  auto* cert = group_cmd("certificate", "certificates");
  leaf(cert, "replay", "replay a certificate", certificate_replay);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    const Output out = run(o);
    emit(o, out);
    return out.code;
  } catch (const NotAChain& e) {
    return fail_with(o, kMathFailure, "NotAChain", e.what());
  } catch (const NotFullAt& e) {
    return fail_with(o, kMathFailure, "NotFullAt", e.what());
  } catch (const PreconditionFailed& e) {
    return fail_with(o, kMathFailure, "PreconditionFailed", e.what());
  } catch (const SupplierContractViolation& e) {
    return fail_with(o, kMathFailure, "SupplierContractViolation", e.what());
  } catch (const SupportCapExceeded& e) {
    return fail_with(o, kInputError, "SupportCapExceeded", e.what());
  } catch (const Json::exception& e) {
    return fail_with(o, kInputError, "InputError", e.what());
  } catch (const std::exception& e) {
    return fail_with(o, kInputError, "InputError", e.what());
  }
}
