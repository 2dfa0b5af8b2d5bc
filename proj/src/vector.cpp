#include "conemeans/vector.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "conemeans/errors.hpp"

namespace conemeans {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  auto r = a % m;
  return r < 0 ? r + m : r;
}

std::size_t minimal_period(const std::vector<Rational>& p) {
  const std::size_t n = p.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = p[i] == p[i - d];
    if (ok) return d;
  }
  return n;
}

// Re-anchors a pattern with absolute phase onto its minimal period.
std::vector<Rational> reduce_period(const std::vector<Rational>& p) {
  auto d = minimal_period(p);
  return {p.begin(), p.begin() + static_cast<std::ptrdiff_t>(d)};
}

}  // namespace

Space Space::finite(int size, int max_coords) {
  if (size < 1 || size > max_coords)
    throw InputError("FiniteCoord size must be in [1, " + std::to_string(max_coords) + "]");
  return Space(FiniteCoordSpace{size});
}

Space Space::group(Group g) { return Space(GroupSpace{std::move(g)}); }

Space Space::periodic_z() { return Space(PeriodicZSpace{}); }

Space Space::polycone(int dim, std::vector<std::vector<Rational>> generators) {
  if (dim < 1) throw InputError("PolyCone dimension must be >= 1");
  for (const auto& g : generators)
    if (static_cast<int>(g.size()) != dim) throw InputError("PolyCone generator has wrong dimension");
  return Space(PolyConeSpace{dim, std::move(generators)});
}

std::string Space::describe() const {
  struct Visitor {
    std::string operator()(const FiniteCoordSpace& s) const { return "finite:" + std::to_string(s.size); }
    std::string operator()(const GroupSpace& s) const { return "group:" + s.group.spec(); }
    std::string operator()(const PeriodicZSpace&) const { return "epz"; }
    std::string operator()(const PolyConeSpace& s) const {
      return "polycone:" + std::to_string(s.dim) + "/" + std::to_string(s.generators.size());
    }
  };
  return std::visit(Visitor{}, kind_);
}

Rational PeriodicZ::at(std::int64_t x) const {
  if (x < core_start) return left[floor_mod(x, static_cast<std::int64_t>(left.size()))];
  if (x >= core_end()) return right[floor_mod(x, static_cast<std::int64_t>(right.size()))];
  return core[static_cast<std::size_t>(x - core_start)];
}

bool PeriodicZ::finitely_supported() const {
  auto zero = [](const Rational& q) { return q == 0; };
  return std::all_of(left.begin(), left.end(), zero) && std::all_of(right.begin(), right.end(), zero);
}

void PeriodicZ::canonicalize() {
  if (left.empty() || right.empty()) throw InputError("eventually periodic vector needs non-empty periods");
  left = reduce_period(left);
  right = reduce_period(right);
  const auto pl = static_cast<std::int64_t>(left.size());
  const auto pr = static_cast<std::int64_t>(right.size());
  std::size_t front = 0;
  while (front < core.size() &&
         core[front] == left[floor_mod(core_start + static_cast<std::int64_t>(front), pl)])
    ++front;
  std::size_t back = core.size();
  while (back > front && core[back - 1] == right[floor_mod(core_start + static_cast<std::int64_t>(back) - 1, pr)])
    --back;
  if (front == back) {
    core.clear();
    // An empty core still needs left/right to agree on where they meet; keep
    // the split point only if the tails differ.
    if (left == right && pl == pr) {
      core_start = 0;
    } else {
      core_start += static_cast<std::int64_t>(front);
    }
    return;
  }
  std::vector<Rational> trimmed(core.begin() + static_cast<std::ptrdiff_t>(front),
                                core.begin() + static_cast<std::ptrdiff_t>(back));
  core_start += static_cast<std::int64_t>(front);
  core = std::move(trimmed);
}

void require_same_space(const Vector& a, const Vector& b) {
  if (a.space() != b.space()) throw SpaceMismatch(a.space().describe() + " vs " + b.space().describe());
}

Vector Vector::zero(const Space& space) {
  if (space.as<PeriodicZSpace>()) return Vector(space, PeriodicZ{});
  if (auto pc = space.as<PolyConeSpace>()) return Vector(space, std::vector<Rational>(pc->dim, Rational(0)));
  return Vector(space, SparseEntries{});
}

Vector Vector::sparse(const Space& space, SparseEntries entries) {
  if (!space.as<FiniteCoordSpace>() && !space.as<GroupSpace>())
    throw SpaceMismatch("sparse data requires a FiniteCoord or group space");
  if (auto fc = space.as<FiniteCoordSpace>()) {
    for (const auto& [k, _] : entries)
      if (k.size() != 1 || k[0] < 0 || k[0] >= fc->size)
        throw InputError("coordinate out of range in " + space.describe());
  }
  std::erase_if(entries, [](const auto& kv) { return kv.second == 0; });
  return Vector(space, std::move(entries));
}

Vector Vector::periodic(PeriodicZ data) {
  data.canonicalize();
  return Vector(Space::periodic_z(), std::move(data));
}

Vector Vector::dense(const Space& space, std::vector<Rational> values) {
  if (auto pc = space.as<PolyConeSpace>()) {
    if (static_cast<int>(values.size()) != pc->dim) throw InputError("dense vector has wrong dimension");
    return Vector(space, std::move(values));
  }
  if (auto fc = space.as<FiniteCoordSpace>()) {
    if (static_cast<int>(values.size()) != fc->size) throw InputError("dense vector has wrong dimension");
    SparseEntries e;
    for (int i = 0; i < fc->size; ++i)
      if (values[i] != 0) e.emplace(Element{i}, values[i]);
    return Vector(space, std::move(e));
  }
  throw SpaceMismatch("dense data requires a PolyCone or FiniteCoord space");
}

Vector Vector::coords(int size, const std::vector<Rational>& values) {
  return dense(Space::finite(size), values);
}

Vector Vector::delta(const Space& space, const Element& point, const Rational& value) {
  if (space.as<PeriodicZSpace>()) {
    if (point.size() != 1) throw InputError("Z point must have one coordinate");
    return z::delta(point[0], value);
  }
  if (auto pc = space.as<PolyConeSpace>()) {
    std::vector<Rational> v(pc->dim, Rational(0));
    v.at(static_cast<std::size_t>(point.at(0))) = value;
    return Vector(space, std::move(v));
  }
  return sparse(space, SparseEntries{{point, value}});
}

Rational Vector::at(const Element& point) const {
  if (auto s = sparse_entries()) {
    auto it = s->find(point);
    return it == s->end() ? Rational(0) : it->second;
  }
  if (auto p = periodic_data()) return p->at(point.at(0));
  return dense_values()->at(static_cast<std::size_t>(point.at(0)));
}

bool Vector::is_zero() const {
  bool zero = true;
  for_each_value([&](const Rational& q) { zero = zero && q == 0; });
  return zero;
}

bool Vector::finitely_supported() const {
  if (auto p = periodic_data()) return p->finitely_supported();
  return true;
}

void Vector::for_each_value(const std::function<void(const Rational&)>& f) const {
  if (auto s = sparse_entries()) {
    for (const auto& [_, q] : *s) f(q);
  } else if (auto p = periodic_data()) {
    for (const auto& q : p->left) f(q);
    for (const auto& q : p->core) f(q);
    for (const auto& q : p->right) f(q);
  } else {
    for (const auto& q : *dense_values()) f(q);
  }
}

Vector Vector::zip(const Vector& other,
                   const std::function<Rational(const Rational&, const Rational&)>& f) const {
  require_same_space(*this, other);
  if (auto a = sparse_entries()) {
    const auto& b = *other.sparse_entries();
    SparseEntries out;
    auto ia = a->begin();
    auto ib = b.begin();
    const Rational zero(0);
    while (ia != a->end() || ib != b.end()) {
      if (ib == b.end() || (ia != a->end() && ia->first < ib->first)) {
        out.emplace_hint(out.end(), ia->first, f(ia->second, zero));
        ++ia;
      } else if (ia == a->end() || ib->first < ia->first) {
        out.emplace_hint(out.end(), ib->first, f(zero, ib->second));
        ++ib;
      } else {
        out.emplace_hint(out.end(), ia->first, f(ia->second, ib->second));
        ++ia;
        ++ib;
      }
    }
    return sparse(space_, std::move(out));
  }
  if (auto a = periodic_data()) {
    const auto& b = *other.periodic_data();
    PeriodicZ out;
    auto lcm = [](std::size_t x, std::size_t y) { return std::lcm(x, y); };
    const auto pl = lcm(a->left.size(), b.left.size());
    const auto pr = lcm(a->right.size(), b.right.size());
    out.left.clear();
    out.right.clear();
    for (std::size_t j = 0; j < pl; ++j)
      out.left.push_back(f(a->left[j % a->left.size()], b.left[j % b.left.size()]));
    for (std::size_t j = 0; j < pr; ++j)
      out.right.push_back(f(a->right[j % a->right.size()], b.right[j % b.right.size()]));
    const auto lo = std::min(a->core_start, b.core_start);
    const auto hi = std::max(a->core_end(), b.core_end());
    out.core_start = lo;
    for (auto x = lo; x < hi; ++x) out.core.push_back(f(a->at(x), b.at(x)));
    return periodic(std::move(out));
  }
  const auto& a = *dense_values();
  const auto& b = *other.dense_values();
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return Vector(space_, std::move(out));
}

Vector Vector::map(const std::function<Rational(const Rational&)>& f) const {
  if (auto s = sparse_entries()) {
    SparseEntries out;
    for (const auto& [k, q] : *s) out.emplace_hint(out.end(), k, f(q));
    return sparse(space_, std::move(out));
  }
  if (auto p = periodic_data()) {
    PeriodicZ out = *p;
    for (auto& q : out.left) q = f(q);
    for (auto& q : out.core) q = f(q);
    for (auto& q : out.right) q = f(q);
    return periodic(std::move(out));
  }
  std::vector<Rational> out = *dense_values();
  for (auto& q : out) q = f(q);
  return Vector(space_, std::move(out));
}

Vector Vector::operator+(const Vector& other) const {
  return zip(other, [](const Rational& a, const Rational& b) { return Rational(a + b); });
}

Vector Vector::operator-(const Vector& other) const {
  return zip(other, [](const Rational& a, const Rational& b) { return Rational(a - b); });
}

Vector Vector::operator-() const {
  return map([](const Rational& a) { return Rational(-a); });
}

Vector Vector::operator*(const Rational& t) const {
  return map([&t](const Rational& a) { return Rational(a * t); });
}

std::size_t Vector::entry_count() const {
  if (auto s = sparse_entries()) return s->size();
  if (auto p = periodic_data()) return p->left.size() + p->core.size() + p->right.size();
  return dense_values()->size();
}

Rational Vector::entry(std::size_t index) const {
  if (auto s = sparse_entries()) return std::next(s->begin(), static_cast<std::ptrdiff_t>(index))->second;
  if (auto p = periodic_data()) {
    if (index < p->left.size()) return p->left[index];
    index -= p->left.size();
    if (index < p->core.size()) return p->core[index];
    return p->right.at(index - p->core.size());
  }
  return dense_values()->at(index);
}

Vector Vector::with_entry(std::size_t index, const Rational& value) const {
  if (auto s = sparse_entries()) {
    SparseEntries out = *s;
    std::next(out.begin(), static_cast<std::ptrdiff_t>(index))->second = value;
    return sparse(space_, std::move(out));
  }
  if (auto p = periodic_data()) {
    PeriodicZ out = *p;
    if (index < out.left.size()) {
      out.left[index] = value;
    } else if (index - out.left.size() < out.core.size()) {
      out.core[index - out.left.size()] = value;
    } else {
      out.right.at(index - out.left.size() - out.core.size()) = value;
    }
    return periodic(std::move(out));
  }
  std::vector<Rational> out = *dense_values();
  out.at(index) = value;
  return Vector(space_, std::move(out));
}

std::string Vector::to_string() const {
  std::ostringstream out;
  if (auto s = sparse_entries()) {
    const auto* gs = space_.as<GroupSpace>();
    out << '{';
    bool first = true;
    for (const auto& [k, q] : *s) {
      out << (first ? "" : ", ") << (gs ? gs->group.format(k) : std::to_string(k[0])) << ": "
          << conemeans::to_string(q);
      first = false;
    }
    out << '}';
  } else if (auto p = periodic_data()) {
    auto list = [&](const std::vector<Rational>& v) {
      out << '[';
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << conemeans::to_string(v[i]);
      out << ']';
    };
    out << "epz(left=";
    list(p->left);
    out << ", core@" << p->core_start << '=';
    list(p->core);
    out << ", right=";
    list(p->right);
    out << ')';
  } else {
    const auto& v = *dense_values();
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << conemeans::to_string(v[i]);
    out << ')';
  }
  return out.str();
}

bool operator==(const Vector& a, const Vector& b) {
  if (a.space() != b.space()) return false;
  if (a.periodic_data()) return (a - b).is_zero();
  return a.data_ == b.data_;
}

namespace z {

Vector delta(std::int64_t x, const Rational& value) {
  PeriodicZ p;
  p.core_start = x;
  p.core = {value};
  return Vector::periodic(std::move(p));
}

Vector indicator(const std::vector<std::int64_t>& points) {
  Vector v = Vector::zero(Space::periodic_z());
  for (auto x : points) v = v + delta(x);
  return v;
}

Vector constant(const Rational& c) { return periodic({c}); }

Vector periodic(const std::vector<Rational>& period) { return make(period, 0, {}, period); }

Vector make(std::vector<Rational> left, std::int64_t core_start, std::vector<Rational> core,
            std::vector<Rational> right) {
  PeriodicZ p;
  p.left = std::move(left);
  p.core_start = core_start;
  p.core = std::move(core);
  p.right = std::move(right);
  return Vector::periodic(std::move(p));
}

}  // namespace z

}  // namespace conemeans
