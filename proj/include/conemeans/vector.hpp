#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conemeans/group.hpp"
#include "conemeans/rational.hpp"

namespace conemeans {

inline constexpr int kDefaultMaxCoords = 64;

/// Coordinates 0..size-1 with the pointwise order.
struct FiniteCoordSpace {
  int size = 0;
  friend bool operator==(const FiniteCoordSpace&, const FiniteCoordSpace&) = default;
};

/// Finitely supported rational functions on a group, pointwise order.
struct GroupSpace {
  Group group;
  friend bool operator==(const GroupSpace& a, const GroupSpace& b) { return a.group == b.group; }
};

/// Eventually periodic rational functions on Z, pointwise order.
struct PeriodicZSpace {
  friend bool operator==(const PeriodicZSpace&, const PeriodicZSpace&) = default;
};

/// Q^dim ordered by the cone spanned by `generators`.
struct PolyConeSpace {
  int dim = 0;
  std::vector<std::vector<Rational>> generators;
  friend bool operator==(const PolyConeSpace&, const PolyConeSpace&) = default;
};

class Space {
 public:
  using Kind = std::variant<FiniteCoordSpace, GroupSpace, PeriodicZSpace, PolyConeSpace>;

  static Space finite(int size, int max_coords = kDefaultMaxCoords);
  static Space group(Group g);
  static Space periodic_z();
  static Space polycone(int dim, std::vector<std::vector<Rational>> generators);

  const Kind& kind() const { return kind_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&kind_);
  }
  bool is_coordinatewise() const { return !std::holds_alternative<PolyConeSpace>(kind_); }
  std::string describe() const;

  friend bool operator==(const Space& a, const Space& b) { return a.kind_ == b.kind_; }
  friend bool operator!=(const Space& a, const Space& b) { return !(a == b); }

 private:
  explicit Space(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Eventually periodic function on Z. Phases are absolute: for x below the
/// core the value is left[x mod |left|], above it right[x mod |right|].
struct PeriodicZ {
  std::vector<Rational> left{Rational(0)};
  std::int64_t core_start = 0;
  std::vector<Rational> core;
  std::vector<Rational> right{Rational(0)};

  std::int64_t core_end() const { return core_start + static_cast<std::int64_t>(core.size()); }
  Rational at(std::int64_t x) const;
  bool finitely_supported() const;
  /// Minimal periods, core trimmed against the periodic tails, empty core at 0.
  void canonicalize();

  friend bool operator==(const PeriodicZ&, const PeriodicZ&) = default;
};

using SparseEntries = std::map<Element, Rational>;

/// Exact vector in one of the concrete spaces. Immutable value.
class Vector {
 public:
  using Data = std::variant<SparseEntries, PeriodicZ, std::vector<Rational>>;

  static Vector zero(const Space& space);
  /// FiniteCoord or GroupFinSupp; zero entries are dropped.
  static Vector sparse(const Space& space, SparseEntries entries);
  static Vector periodic(PeriodicZ data);
  /// Dense values: PolyCone vectors, or FiniteCoord given coordinate by coordinate.
  static Vector dense(const Space& space, std::vector<Rational> values);
  static Vector coords(int size, const std::vector<Rational>& values);
  static Vector delta(const Space& space, const Element& point, const Rational& value = 1);

  const Space& space() const { return space_; }
  const Data& data() const { return data_; }
  const SparseEntries* sparse_entries() const { return std::get_if<SparseEntries>(&data_); }
  const PeriodicZ* periodic_data() const { return std::get_if<PeriodicZ>(&data_); }
  const std::vector<Rational>* dense_values() const { return std::get_if<std::vector<Rational>>(&data_); }

  /// Value at a point of a coordinatewise space (FiniteCoord key {i}, Z key {x}).
  Rational at(const Element& point) const;
  bool is_zero() const;
  bool finitely_supported() const;

  /// Visits every value the vector takes (core and one period each side for Z;
  /// omitted zeros of sparse data are not visited).
  void for_each_value(const std::function<void(const Rational&)>& f) const;

  Vector operator+(const Vector& other) const;
  Vector operator-(const Vector& other) const;
  Vector operator-() const;
  Vector operator*(const Rational& t) const;
  friend Vector operator*(const Rational& t, const Vector& v) { return v * t; }

  /// Pointwise combination on coordinatewise spaces (f(0,0) must be 0).
  Vector zip(const Vector& other, const std::function<Rational(const Rational&, const Rational&)>& f) const;
  Vector map(const std::function<Rational(const Rational&)>& f) const;

  /// Number of stored scalar entries, and a copy with one replaced (for shrinking).
  std::size_t entry_count() const;
  Rational entry(std::size_t index) const;
  Vector with_entry(std::size_t index, const Rational& value) const;

  std::string to_string() const;

  friend bool operator==(const Vector& a, const Vector& b);
  friend bool operator!=(const Vector& a, const Vector& b) { return !(a == b); }

 private:
  Vector(Space space, Data data) : space_(std::move(space)), data_(std::move(data)) {}
  Space space_;
  Data data_;
};

void require_same_space(const Vector& a, const Vector& b);

/// Convenience constructors on Z (PeriodicZ space).
namespace z {
Vector delta(std::int64_t x, const Rational& value = 1);
Vector indicator(const std::vector<std::int64_t>& points);
Vector constant(const Rational& c);
/// Same period pattern on both sides, empty core.
Vector periodic(const std::vector<Rational>& period);
Vector make(std::vector<Rational> left, std::int64_t core_start, std::vector<Rational> core,
            std::vector<Rational> right);
}  // namespace z

}  // namespace conemeans
