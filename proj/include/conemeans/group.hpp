#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace conemeans {

/// Canonical normal form of a group element. Layout per kind:
///   FiniteTable, Cyclic: {index}
///   Symmetric(n): the image list {p(0), ..., p(n-1)}
///   ZPower(d): the d coordinates
///   Free(k): reduced word, letter i as +(i+1), its inverse as -(i+1)
///   Lamplighter: {head, lit lamp positions in increasing order...}
using Element = std::vector<std::int32_t>;

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// Immutable handle to a concrete group. Copies share the underlying data.
class Group {
 public:
  enum class Kind { FiniteTable, Cyclic, Symmetric, ZPower, Free, Lamplighter };

  /// `table[i][j]` is the index of i*j. Validated: identity, inverses,
  /// associativity over all triples.
  static Group finite_table(std::vector<std::vector<int>> table);
  static Group cyclic(int order);
  static Group symmetric(int degree);
  static Group zpower(int rank);
  static Group free(int rank);
  static Group lamplighter();

  /// "cyclic:6", "sym:3", "z:1" (alias "zpower:1"), "free:2", "lamplighter".
  /// Finite tables are built from JSON by the serializer.
  static Group parse(std::string_view spec);

  Kind kind() const;
  int param() const;
  std::string spec() const;

  Element identity() const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element pow(const Element& a, std::int64_t n) const;
  bool is_identity(const Element& a) const { return a == identity(); }

  std::string format(const Element& a) const;
  Element parse_element(std::string_view text) const;

  bool is_finite() const;
  std::optional<std::int64_t> order() const;
  /// All elements, identity first. Throws UnsupportedSpace for infinite groups.
  std::vector<Element> elements() const;
  /// Symmetric generating set used by the builtin random walks.
  std::vector<Element> generators() const;
  /// Elements within word distance `radius` of the identity (BFS over generators).
  std::vector<Element> ball(int radius) const;
  /// Order of `a` if it is at most `limit`.
  std::optional<std::int64_t> element_order(const Element& a, std::int64_t limit = 1 << 20) const;

  const std::vector<std::vector<int>>& table() const;

  friend bool operator==(const Group& a, const Group& b);
  friend bool operator!=(const Group& a, const Group& b) { return !(a == b); }

 private:
  struct Impl;
  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace conemeans
