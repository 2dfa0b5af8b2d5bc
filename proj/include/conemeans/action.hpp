#pragma once

#include "conemeans/group.hpp"
#include "conemeans/vector.hpp"

namespace conemeans {

/// A group acting on a space by positive linear bijections.
///   left translation: (gv)(x) = v(g^-1 x) on a group space, or shifts on Z
///   permutation: (gv)(g.i) = v(i) on FiniteCoord, for Symmetric(n),
///   Cyclic(n) rotations, or a finite table acting on its own indices
class Action {
 public:
  enum class Kind { LeftTranslation, Permutation };

  /// `space` is a group space (acted on by its group) or Z (acted on by z:1).
  static Action left_translation(const Space& space);
  static Action regular(const Group& group) { return left_translation(Space::group(group)); }
  static Action permutation(const Group& group, int points);
  /// "regular:<group>", "shift" (Z), "perm:<group>".
  static Action parse(const std::string& spec);

  Kind kind() const { return kind_; }
  const Group& group() const { return group_; }
  const Space& space() const { return space_; }

  Vector apply(const Element& g, const Vector& v) const;
  std::string describe() const;

 private:
  Action(Kind kind, Group group, Space space) : kind_(kind), group_(std::move(group)), space_(std::move(space)) {}
  int point_image(const Element& g, int i) const;

  Kind kind_;
  Group group_;
  Space space_;
};

}  // namespace conemeans
