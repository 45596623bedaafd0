#pragma once

// Finite G-sets in the strict (n, α) model: a size n and, for each group
// element, a permutation of {0, …, n−1}.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eqsk/group.hpp"

namespace eqsk {

class GSet {
 public:
  /// `action[g]` is the permutation by which element g acts.  Checks that the
  /// identity acts trivially and that action(g·h) = action(g)∘action(h).
  GSet(GroupPtr group, int size, const std::vector<std::vector<int>>& action);

  /// Flat action array `action[g * size + x]`, no checks.  For results that
  /// are G-sets by construction.
  static GSet from_flat_unchecked(GroupPtr group, int size, std::vector<int> action);

  static GSet empty(GroupPtr group);
  /// `size` fixed points.
  static GSet trivial(GroupPtr group, int size);

  int size() const noexcept { return size_; }
  const FiniteGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }

  int act(int g, int x) const { return action_[static_cast<std::size_t>(g) * size_ + x]; }
  std::span<const int> permutation(int g) const {
    return {action_.data() + static_cast<std::size_t>(g) * size_, static_cast<std::size_t>(size_)};
  }
  const std::vector<int>& flat_action() const noexcept { return action_; }

  bool same_group(const GSet& other) const;
  bool operator==(const GSet& other) const;

 private:
  friend class GMap;
  GSet() = default;

  GroupPtr group_;
  int size_ = 0;
  std::vector<int> action_;
};

/// An equivariant map of G-sets.
class GMap {
 public:
  /// Checks ranges and equivariance.
  GMap(GSet source, GSet target, std::vector<int> values);
  static GMap unchecked(GSet source, GSet target, std::vector<int> values);
  static GMap identity(const GSet& x);
  /// The unique map to a one-point set.
  static GMap to_point(const GSet& x);

  const GSet& source() const noexcept { return source_; }
  const GSet& target() const noexcept { return target_; }
  const std::vector<int>& values() const noexcept { return values_; }
  int operator()(int x) const { return values_[x]; }

  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }

  /// `next ∘ this`
  GMap then(const GMap& next) const;
  /// Inverse of a bijection.
  GMap inverse() const;

  bool operator==(const GMap& other) const {
    return values_ == other.values_ && source_ == other.source_ && target_ == other.target_;
  }

 private:
  GMap() = default;

  GSet source_;
  GSet target_;
  std::vector<int> values_;
};

using Orbit = std::vector<int>;

/// Orbits, each sorted, ordered by minimal element.
std::vector<Orbit> orbits(const GSet& x);
Subgroup stabilizer(const GSet& x, int point);
std::vector<int> fixed_points(const GSet& x, const Subgroup& subgroup);

/// Sorted multiset of stabilizer class indices, one per orbit.
std::vector<int> orbit_type(const GSet& x, const SubgroupLattice& lattice);
std::vector<int> orbit_type(const GSet& x);

/// An equivariant bijection X → Y when the orbit types agree.
std::optional<GMap> iso(const GSet& x, const GSet& y, const SubgroupLattice& lattice);
std::optional<GMap> iso(const GSet& x, const GSet& y);

struct Coproduct {
  GSet sum;
  GMap in_left;
  GMap in_right;
};
/// X occupies 0…|X|−1, Y follows.
Coproduct disjoint_union(const GSet& x, const GSet& y);

/// Point (x, y) has index x·|Y| + y.
GSet product(const GSet& x, const GSet& y);

struct Pullback {
  GSet apex;
  GMap first;   // P → A
  GMap second;  // P → B
};
/// P = {(a, b) : f(a) = g(b)} in lexicographic order of (a, b).
Pullback canonical_pullback(const GMap& f, const GMap& g);

struct Pushout {
  GSet apex;
  GMap from_b;  // B → D
  GMap from_c;  // C → D
};
/// D = C ⊔ (B ∖ f(A)), C first, then the complement of f(A) in B's order.
Pushout pushout_along_injections(const GMap& f, const GMap& g);

struct HomOptions {
  std::size_t cap = 1000000;
};
/// All equivariant maps X → Y, by choosing images of orbit base points among
/// target points fixed by the base point's stabilizer.
std::vector<GMap> hom_set(const GSet& x, const GSet& y, HomOptions options = {});

/// G/H on the cosets of `cosets()`, so point 0 is eH.
GSet coset_space(const GroupPtr& group, const Subgroup& subgroup);

/// Restriction of a G-set to H ≤ G, as a set with an action of the group
/// `sub.group`.
GSet restrict_to(const GSet& x, const SubgroupGroup& sub);

/// Induction of an H-set S to a G-set over G/H.  With coset representatives
/// g_1 = e, g_2, …, g_m, the point (g_i, s) has index i·|S| + s and
/// g·(g_i, s) = (g_j, h·s) where g·g_i = g_j·h.
struct Induced {
  GSet total;
  GMap to_cosets;  // (g_i, s) ↦ g_i H
};
Induced induce(const GroupPtr& group, const Subgroup& subgroup, const SubgroupGroup& sub,
               const GSet& h_set);

}  // namespace eqsk
