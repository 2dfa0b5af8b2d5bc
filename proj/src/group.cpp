#include "conemeans/group.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include "conemeans/errors.hpp"

namespace conemeans {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ e.size();
  for (auto x : e) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

struct Group::Impl {
  Kind kind;
  int param = 0;
  std::vector<std::vector<int>> table;
  std::vector<int> table_inverse;
  int table_identity = 0;
};

namespace {

int mod(std::int64_t a, std::int64_t m) {
  auto r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

Group Group::finite_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InputError("empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw InputError("multiplication table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw InputError("multiplication table entry out of range");
  }
  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (identity < 0) throw InputError("multiplication table has no identity");
  std::vector<int> inverse(n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (table[x][y] == identity && table[y][x] == identity) inverse[x] = y;
  if (std::find(inverse.begin(), inverse.end(), -1) != inverse.end())
    throw InputError("multiplication table lacks inverses");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw InputError("multiplication table is not associative");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::FiniteTable;
  impl->param = n;
  impl->table = std::move(table);
  impl->table_inverse = std::move(inverse);
  impl->table_identity = identity;
  return Group(std::move(impl));
}

Group Group::cyclic(int order) {
  if (order < 1) throw InputError("cyclic group order must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Cyclic;
  impl->param = order;
  return Group(std::move(impl));
}

Group Group::symmetric(int degree) {
  if (degree < 1 || degree > 8) throw InputError("symmetric group degree must be in [1, 8]");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Symmetric;
  impl->param = degree;
  return Group(std::move(impl));
}

Group Group::zpower(int rank) {
  if (rank < 1) throw InputError("Z^d needs d >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ZPower;
  impl->param = rank;
  return Group(std::move(impl));
}

Group Group::free(int rank) {
  if (rank < 1 || rank > 26) throw InputError("free group rank must be in [1, 26]");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Free;
  impl->param = rank;
  return Group(std::move(impl));
}

Group Group::lamplighter() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Lamplighter;
  impl->param = 0;
  return Group(std::move(impl));
}

Group Group::parse(std::string_view spec) {
  std::string s(spec);
  auto colon = s.find(':');
  std::string name = s.substr(0, colon);
  int arg = 0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      arg = std::stoi(s.substr(colon + 1), &used);
      if (used != s.size() - colon - 1) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("malformed group spec '" + s + "'");
    }
  }
  if (name == "cyclic") return cyclic(arg);
  if (name == "sym" || name == "symmetric") return symmetric(arg);
  if (name == "z" || name == "zpower") return zpower(colon == std::string::npos ? 1 : arg);
  if (name == "free") return free(arg);
  if (name == "lamplighter") return lamplighter();
  throw InputError("unknown group kind '" + name + "'");
}

Group::Kind Group::kind() const { return impl_->kind; }
int Group::param() const { return impl_->param; }
const std::vector<std::vector<int>>& Group::table() const { return impl_->table; }

std::string Group::spec() const {
  switch (impl_->kind) {
    case Kind::FiniteTable: return "table:" + std::to_string(impl_->param);
    case Kind::Cyclic: return "cyclic:" + std::to_string(impl_->param);
    case Kind::Symmetric: return "sym:" + std::to_string(impl_->param);
    case Kind::ZPower: return "z:" + std::to_string(impl_->param);
    case Kind::Free: return "free:" + std::to_string(impl_->param);
    case Kind::Lamplighter: return "lamplighter";
  }
  return "?";
}

Element Group::identity() const {
  switch (impl_->kind) {
    case Kind::FiniteTable: return {impl_->table_identity};
    case Kind::Cyclic: return {0};
    case Kind::Symmetric: {
      Element e(impl_->param);
      std::iota(e.begin(), e.end(), 0);
      return e;
    }
    case Kind::ZPower: return Element(impl_->param, 0);
    case Kind::Free: return {};
    case Kind::Lamplighter: return {0};
  }
  return {};
}

Element Group::mul(const Element& a, const Element& b) const {
  switch (impl_->kind) {
    case Kind::FiniteTable: return {impl_->table[a[0]][b[0]]};
    case Kind::Cyclic: return {mod(static_cast<std::int64_t>(a[0]) + b[0], impl_->param)};
    case Kind::Symmetric: {
      Element r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
      return r;
    }
    case Kind::ZPower: {
      Element r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
      return r;
    }
    case Kind::Free: {
      Element r;
      r.reserve(a.size() + b.size());
      r = a;
      for (auto letter : b) {
        if (!r.empty() && r.back() == -letter)
          r.pop_back();
        else
          r.push_back(letter);
      }
      return r;
    }
    case Kind::Lamplighter: {
      // (p, L)(q, M) = (p + q, L xor (M + p))
      std::set<std::int32_t> lamps(a.begin() + 1, a.end());
      for (auto it = b.begin() + 1; it != b.end(); ++it) {
        auto x = *it + a[0];
        if (!lamps.erase(x)) lamps.insert(x);
      }
      Element r{a[0] + b[0]};
      r.insert(r.end(), lamps.begin(), lamps.end());
      return r;
    }
  }
  return {};
}

Element Group::inv(const Element& a) const {
  switch (impl_->kind) {
    case Kind::FiniteTable: return {impl_->table_inverse[a[0]]};
    case Kind::Cyclic: return {mod(-static_cast<std::int64_t>(a[0]), impl_->param)};
    case Kind::Symmetric: {
      Element r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::int32_t>(i);
      return r;
    }
    case Kind::ZPower: {
      Element r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
      return r;
    }
    case Kind::Free: {
      Element r(a.rbegin(), a.rend());
      for (auto& x : r) x = -x;
      return r;
    }
    case Kind::Lamplighter: {
      // (p, L)^-1 = (-p, L - p)
      Element r{-a[0]};
      for (auto it = a.begin() + 1; it != a.end(); ++it) r.push_back(*it - a[0]);
      return r;
    }
  }
  return {};
}

Element Group::pow(const Element& a, std::int64_t n) const {
  Element base = n < 0 ? inv(a) : a;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  Element result = identity();
  while (k > 0) {
    if (k & 1U) result = mul(result, base);
    base = mul(base, base);
    k >>= 1U;
  }
  return result;
}

std::string Group::format(const Element& a) const {
  std::ostringstream out;
  switch (impl_->kind) {
    case Kind::FiniteTable:
    case Kind::Cyclic: out << a[0]; break;
    case Kind::Symmetric:
    case Kind::ZPower: {
      out << (impl_->kind == Kind::Symmetric ? '[' : '(');
      for (std::size_t i = 0; i < a.size(); ++i) out << (i ? "," : "") << a[i];
      out << (impl_->kind == Kind::Symmetric ? ']' : ')');
      break;
    }
    case Kind::Free:
      for (auto x : a) out << static_cast<char>(x > 0 ? 'a' + x - 1 : 'A' - x - 1);
      break;
    case Kind::Lamplighter: {
      out << a[0] << ";{";
      for (std::size_t i = 1; i < a.size(); ++i) out << (i > 1 ? "," : "") << a[i];
      out << '}';
      break;
    }
  }
  return out.str();
}

namespace {

std::vector<std::int32_t> parse_int_list(std::string_view body, const std::string& whole) {
  std::vector<std::int32_t> out;
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size()) throw InputError("");
      out.push_back(static_cast<std::int32_t>(v));
    } catch (const std::exception&) {
      throw InputError("malformed element '" + whole + "'");
    }
    item.clear();
  };
  for (char c : body) {
    if (c == ',') {
      if (item.empty()) throw InputError("malformed element '" + whole + "'");
      flush();
    } else if (c != ' ') {
      item.push_back(c);
    }
  }
  flush();
  return out;
}

}  // namespace

Element Group::parse_element(std::string_view text) const {
  std::string s(text);
  auto bad = [&] { return InputError("malformed element '" + s + "' for group " + spec()); };
  switch (impl_->kind) {
    case Kind::FiniteTable:
    case Kind::Cyclic: {
      auto v = parse_int_list(s, s);
      if (v.size() != 1) throw bad();
      if (impl_->kind == Kind::Cyclic) return {mod(v[0], impl_->param)};
      if (v[0] < 0 || v[0] >= impl_->param) throw bad();
      return v;
    }
    case Kind::Symmetric: {
      if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw bad();
      auto v = parse_int_list(std::string_view(s).substr(1, s.size() - 2), s);
      if (static_cast<int>(v.size()) != impl_->param) throw bad();
      auto sorted = v;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < impl_->param; ++i)
        if (sorted[i] != i) throw bad();
      return v;
    }
    case Kind::ZPower: {
      std::string_view body = s;
      if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') throw bad();
        body = std::string_view(s).substr(1, s.size() - 2);
      }
      auto v = parse_int_list(body, s);
      if (static_cast<int>(v.size()) != impl_->param) throw bad();
      return v;
    }
    case Kind::Free: {
      Element w;
      if (s == "1" || (s == "e" && impl_->param < 5)) return w;
      for (char c : s) {
        std::int32_t letter = 0;
        if (c >= 'a' && c < 'a' + impl_->param)
          letter = c - 'a' + 1;
        else if (c >= 'A' && c < 'A' + impl_->param)
          letter = -(c - 'A' + 1);
        else
          throw bad();
        if (!w.empty() && w.back() == -letter)
          w.pop_back();
        else
          w.push_back(letter);
      }
      return w;
    }
    case Kind::Lamplighter: {
      auto semi = s.find(';');
      if (semi == std::string::npos) throw bad();
      auto head = parse_int_list(std::string_view(s).substr(0, semi), s);
      std::string rest = s.substr(semi + 1);
      if (head.size() != 1 || rest.size() < 2 || rest.front() != '{' || rest.back() != '}') throw bad();
      auto lamps = parse_int_list(std::string_view(rest).substr(1, rest.size() - 2), s);
      std::set<std::int32_t> lit;
      for (auto x : lamps)
        if (!lit.erase(x)) lit.insert(x);
      Element r{head[0]};
      r.insert(r.end(), lit.begin(), lit.end());
      return r;
    }
  }
  throw bad();
}

bool Group::is_finite() const {
  auto k = impl_->kind;
  return k == Kind::FiniteTable || k == Kind::Cyclic || k == Kind::Symmetric;
}

std::optional<std::int64_t> Group::order() const {
  switch (impl_->kind) {
    case Kind::FiniteTable:
    case Kind::Cyclic: return impl_->param;
    case Kind::Symmetric: {
      std::int64_t f = 1;
      for (int i = 2; i <= impl_->param; ++i) f *= i;
      return f;
    }
    default: return std::nullopt;
  }
}

std::vector<Element> Group::elements() const {
  std::vector<Element> out;
  switch (impl_->kind) {
    case Kind::FiniteTable: {
      out.push_back({impl_->table_identity});
      for (int i = 0; i < impl_->param; ++i)
        if (i != impl_->table_identity) out.push_back({i});
      return out;
    }
    case Kind::Cyclic:
      for (int i = 0; i < impl_->param; ++i) out.push_back({i});
      return out;
    case Kind::Symmetric: {
      Element p = identity();
      do {
        out.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      return out;
    }
    default: throw UnsupportedSpace("group " + spec() + " is infinite");
  }
}

std::vector<Element> Group::generators() const {
  switch (impl_->kind) {
    case Kind::FiniteTable: {
      std::vector<Element> out;
      for (int i = 0; i < impl_->param; ++i)
        if (i != impl_->table_identity) out.push_back({i});
      return out;
    }
    case Kind::Cyclic: {
      if (impl_->param == 1) return {};
      if (impl_->param == 2) return {{1}};
      return {{1}, {impl_->param - 1}};
    }
    case Kind::Symmetric: {
      std::vector<Element> out;
      for (int i = 0; i + 1 < impl_->param; ++i) {
        Element t = identity();
        std::swap(t[i], t[i + 1]);
        out.push_back(t);
      }
      return out;
    }
    case Kind::ZPower: {
      std::vector<Element> out;
      for (int i = 0; i < impl_->param; ++i) {
        Element plus(impl_->param, 0), minus(impl_->param, 0);
        plus[i] = 1;
        minus[i] = -1;
        out.push_back(plus);
        out.push_back(minus);
      }
      return out;
    }
    case Kind::Free: {
      std::vector<Element> out;
      for (int i = 1; i <= impl_->param; ++i) {
        out.push_back({i});
        out.push_back({-i});
      }
      return out;
    }
    case Kind::Lamplighter: return {{1}, {-1}, {0, 0}};
  }
  return {};
}

std::vector<Element> Group::ball(int radius) const {
  std::vector<Element> out{identity()};
  std::unordered_set<Element, ElementHash> seen{identity()};
  std::vector<Element> frontier{identity()};
  auto gens = generators();
  for (int r = 0; r < radius; ++r) {
    std::vector<Element> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        auto y = mul(x, s);
        if (seen.insert(y).second) {
          out.push_back(y);
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  return out;
}

std::optional<std::int64_t> Group::element_order(const Element& a, std::int64_t limit) const {
  if (is_identity(a)) return 1;
  switch (impl_->kind) {
    case Kind::ZPower:
    case Kind::Free: return std::nullopt;
    case Kind::Lamplighter:
      if (a[0] != 0) return std::nullopt;
      return 2;
    default: break;
  }
  Element x = a;
  for (std::int64_t k = 1; k <= limit; ++k) {
    if (is_identity(x)) return k;
    x = mul(x, a);
  }
  return std::nullopt;
}

bool operator==(const Group& a, const Group& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->kind == b.impl_->kind && a.impl_->param == b.impl_->param &&
         a.impl_->table == b.impl_->table;
}

}  // namespace conemeans
