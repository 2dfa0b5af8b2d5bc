#include "conemeans/lattice.hpp"

#include <algorithm>
#include <set>

#include "conemeans/errors.hpp"

namespace conemeans {

namespace {

void require_lattice(const Vector& u) {
  if (!u.space().is_coordinatewise()) throw UnsupportedSpace("lattice operations need a coordinatewise space");
}

Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace

Vector meet(const Vector& u, const Vector& v) {
  require_lattice(u);
  return u.zip(v, rmin);
}

Vector join(const Vector& u, const Vector& v) {
  require_lattice(u);
  return u.zip(v, rmax);
}

std::pair<Vector, Vector> meet_join(const Vector& u, const Vector& v) { return {meet(u, v), join(u, v)}; }

Vector abs(const Vector& u) { return join(u, -u); }

SelfMajorizing is_self_majorizing(const Vector& v) {
  require_lattice(v);
  std::optional<Rational> c;
  v.for_each_value([&](const Rational& q) {
    if (q > 0 && (!c || q < *c)) c = q;
  });
  if (!c) return {false, std::nullopt};
  return {true, c};
}

Vector meet_multiple(const Vector& u, const Vector& v, const Integer& n) { return meet(u, v * Rational(n)); }

BandProjection band_projection(const Vector& v, const Vector& u) {
  require_same_space(u, v);
  if (!is_positive(u) || !is_positive(v)) throw DomainError("band projection needs positive vectors");
  auto sm = is_self_majorizing(v);
  if (!sm.self_majorizing) throw DomainError("band projection needs v != 0");
  Rational umax = 0;
  u.for_each_value([&](const Rational& q) { umax = rmax(umax, q); });
  Integer n_star = ceil(umax / *sm.lower_bound);
  if (n_star < 1) n_star = 1;
  const Vector projection = u.zip(v, [](const Rational& a, const Rational& b) { return b != 0 ? a : Rational(0); });
  for (int k = 0; k < 3; ++k)
    if (meet_multiple(u, v, n_star + k) != projection)
      throw DomainError("u ∧ n v has not stabilized at n = " + Integer(n_star + k).get_str());
  return {projection, n_star};
}

Rational extend_cm_global(const ConditionalMean& P, const Vector& u, const Vector& v) {
  const Vector p = band_projection(v, u).projection;
  if (p.is_zero()) return 0;
  // λ = max p / v on supp v, so that p / λ <= v.
  Rational lambda = 0;
  p.zip(v, [&](const Rational& a, const Rational& b) {
    if (b != 0) lambda = rmax(lambda, a / b);
    return Rational(0);
  });
  if (lambda <= 1) return P.eval(p, v);
  return lambda * P.eval(p * Rational(1 / lambda), v);
}

CPTable::CPTable(int ground) : ground_(ground) {
  if (ground < 1 || ground > kMaxGround) throw InputError("CP tables need 1 <= |X| <= 12");
}

Rational CPTable::get(Mask a, Mask b) const {
  if (b == 0) throw DomainError("P(.|B) needs B != {}");
  a &= b;
  if (a == 0) return 0;
  auto it = values_.find({a, b});
  if (it == values_.end()) throw DomainError("table has no entry for this pair");
  return it->second;
}

void CPTable::set(Mask a, Mask b, const Rational& value) {
  const Mask full = (Mask{1} << ground_) - 1;
  if (b == 0 || (b & ~full) || (a & ~b)) throw InputError("CP entry needs nonempty A ⊆ B ⊆ X");
  if (a == 0) return;
  values_[{a, b}] = value;
}

std::vector<int> CPTable::members(Mask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

CPTable::Mask CPTable::mask_of(const std::vector<int>& members) {
  Mask m = 0;
  for (int i : members) {
    if (i < 0 || i >= kMaxGround) throw InputError("CP subset index out of range");
    m |= Mask{1} << i;
  }
  return m;
}

CPTable CPTable::from_measure_chain(int ground, const std::vector<std::vector<Rational>>& measures) {
  CPTable t(ground);
  for (const auto& m : measures) {
    if (static_cast<int>(m.size()) != ground) throw InputError("measure needs one weight per point");
    for (const auto& w : m)
      if (w < 0) throw InputError("measure weights must be nonnegative");
  }
  const Mask full = (Mask{1} << ground) - 1;
  auto mass = [&](const std::vector<Rational>& m, Mask s) {
    Rational total = 0;
    for (int i : members(s)) total += m[static_cast<std::size_t>(i)];
    return total;
  };
  for (Mask b = 1; b <= full; ++b) {
    const std::vector<Rational>* chosen = nullptr;
    Rational mb;
    for (const auto& m : measures) {
      mb = mass(m, b);
      if (mb > 0) {
        chosen = &m;
        break;
      }
    }
    if (!chosen) throw InputError("no measure in the chain charges a nonempty set");
    for (Mask a = b;; a = (a - 1) & b) {
      if (a) t.set(a, b, mass(*chosen, a) / mb);
      if (a == 0) break;
    }
  }
  return t;
}

Report cp_validate(const CPTable& table) {
  Report r;
  r.subject = "CP table on " + std::to_string(table.ground()) + " points";
  auto& norm = r.add("normalization");
  auto& add = r.add("additivity");
  auto& range = r.add("range");
  auto& prod = r.add("product rule");
  const CPTable::Mask full = (CPTable::Mask{1} << table.ground()) - 1;
  auto name = [](CPTable::Mask m) {
    std::string s = "{";
    auto mem = CPTable::members(m);
    for (std::size_t i = 0; i < mem.size(); ++i) s += (i ? "," : "") + std::to_string(mem[i]);
    return s + "}";
  };
  auto safe_get = [&](CPTable::Mask a, CPTable::Mask b) -> std::optional<Rational> {
    try {
      return table.get(a, b);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  for (CPTable::Mask b = 1; b <= full; ++b) {
    ++norm.checked;
    auto pb = safe_get(b, b);
    if (!pb || *pb != 1) norm.fail("P(B|B) != 1 for B = " + name(b));
    // Additivity on disjoint unions reduces to P(A|B) = Σ_{x∈A} P({x}|B).
    std::vector<Rational> point;
    bool complete = true;
    for (int x : CPTable::members(b)) {
      auto q = safe_get(CPTable::Mask{1} << x, b);
      complete = complete && q.has_value();
      point.push_back(q.value_or(0));
    }
    for (CPTable::Mask a = b; a; a = (a - 1) & b) {
      auto pa = safe_get(a, b);
      ++range.checked;
      if (!pa) {
        range.fail("missing P(" + name(a) + "|" + name(b) + ")");
        continue;
      }
      if (*pa < 0 || *pa > 1) range.fail("P(" + name(a) + "|" + name(b) + ") = " + to_string(*pa));
      Rational s = 0;
      auto mb = CPTable::members(b);
      for (std::size_t i = 0; i < mb.size(); ++i)
        if (a & (CPTable::Mask{1} << mb[i])) s += point[i];
      ++add.checked;
      if (!complete || s != *pa) add.fail("P(" + name(a) + "|" + name(b) + ") is not the sum of its points");
    }
  }
  for (CPTable::Mask c = 1; c <= full; ++c) {
    for (CPTable::Mask b = c; b; b = (b - 1) & c) {
      auto pbc = safe_get(b, c);
      for (CPTable::Mask a = b; a; a = (a - 1) & b) {
        auto pab = safe_get(a, b);
        auto pac = safe_get(a, c);
        ++prod.checked;
        if (!pab || !pbc || !pac || *pab * *pbc != *pac)
          prod.fail("A = " + name(a) + ", B = " + name(b) + ", C = " + name(c));
      }
    }
  }
  return r;
}

namespace {

class StepMean final : public ConditionalMean {
 public:
  explicit StepMean(CPTable table) : table_(std::move(table)), space_(Space::finite(table_.ground())) {}
  const Space& space() const override { return space_; }

  Rational eval(const Vector& u, const Vector& v) const override {
    require_mean_pair(u, v);
    const CPTable::Mask av = support(v);
    return lift(u, av) / lift(v, av);
  }
  std::string describe() const override { return "cp-lift(" + std::to_string(table_.ground()) + ")"; }

 private:
  static CPTable::Mask support(const Vector& v) {
    CPTable::Mask m = 0;
    for (const auto& [k, q] : *v.sparse_entries())
      if (q != 0) m |= CPTable::Mask{1} << k.at(0);
    return m;
  }
  // P'(u|A) = Σ_{t in range(u), t != 0} t P(u^-1(t) | A).
  Rational lift(const Vector& u, CPTable::Mask a) const {
    std::map<Rational, CPTable::Mask> level;
    for (const auto& [k, q] : *u.sparse_entries())
      if (q != 0) level[q] |= CPTable::Mask{1} << k.at(0);
    Rational s = 0;
    for (const auto& [t, m] : level) s += t * table_.get(m, a);
    return s;
  }

  CPTable table_;
  Space space_;
};

}  // namespace

MeanPtr cp_to_cm(const CPTable& table) {
  auto report = cp_validate(table);
  if (!report.passed()) {
    for (const auto& c : report.checks)
      if (!c.passed) throw InputError("invalid CP table: " + c.name + " fails at " + c.witness);
  }
  return std::make_shared<StepMean>(table);
}

}  // namespace conemeans
