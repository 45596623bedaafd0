#pragma once

// Finite G-sets over a base G-set X: the cut-and-paste category in
// manifold dimension 0, its truncations, the restriction and transfer
// functors between bases, and the K0 Mackey functor they assemble into.
//
// An object (M, f: M → X) is determined up to iso over X by its orbit
// types.  A type is a pair (c, L): an X-orbit c with base point x_c and a
// subgroup L ≤ Stab(x_c), taken up to Stab(x_c)-conjugacy.  Its canonical
// realization is G/L with gL ↦ g·x_c.  Canonical objects list their blocks
// by type, so objects are identified with type multiplicity vectors.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqsk/burnside.hpp"
#include "eqsk/mackey.hpp"
#include "eqsk/report.hpp"
#include "eqsk/squares.hpp"

namespace eqsk {

struct ObjectOverX {
  GSet total;
  GMap structure_map;
};

struct OrbitType {
  int orbit = 0;        // index into orbits(base)
  int base_point = 0;   // x_c, the orbit's minimal point
  int local_class = 0;  // class of L in the subgroup lattice of Stab(x_c)
  Subgroup subgroup;    // L in parent element indices
  int size = 0;         // [G : L]
  /// n ∈ N_{Stab(x_c)}(L), one per coset nL (minimal element).  These index
  /// the injections of one G/L block into another over X.
  std::vector<int> weyl;
};

/// The types over a fixed base, with realization and canonicalization.
class TypeSystem {
 public:
  explicit TypeSystem(GSet base);

  const FiniteGroup& group() const { return base_.group(); }
  const GroupPtr& group_ptr() const { return base_.group_ptr(); }
  const GSet& base() const { return base_; }
  int type_count() const { return static_cast<int>(types_.size()); }
  const OrbitType& type(int t) const { return types_[t]; }

  int size_of(const std::vector<int>& vector) const;
  /// Canonical object: blocks G/L in type order, repeated by multiplicity.
  ObjectOverX realize(const std::vector<int>& vector) const;
  /// Offset of the k-th block of type t inside realize(vector).
  int block_offset(const std::vector<int>& vector, int t, int k) const;

  struct Canonical {
    std::vector<int> vector;
    GMap iso;  // realize(vector) → M, over X
  };
  Canonical canonicalize(const GSet& m, const GMap& f) const;
  std::vector<int> classify(const GSet& m, const GMap& f) const;

  /// Image of the point with coset representative index i of a type-t block
  /// under the block injection eL ↦ nL.
  int shift(int t, int i, int n) const;

 private:
  struct Local;
  GSet base_;
  std::vector<OrbitType> types_;
  std::vector<std::shared_ptr<const Local>> locals_;  // per X-orbit
  std::vector<CosetTable> tables_;                    // per type
  std::vector<int> orbit_of_point_;
  std::vector<int> transporter_;  // g with g·x_c = y
  std::vector<int> first_type_;   // per X-orbit
};

struct SKOptions {
  std::size_t object_cap = 200000;
  /// Build the explicit presentation (all injections, all pushout squares,
  /// full composition table).  Throws SizeCapError past `presentation_cap`
  /// morphisms or squares.
  bool presentation = false;
  std::size_t presentation_cap = 50000;
};

struct TruncatedSK {
  std::shared_ptr<const TypeSystem> types;
  int bound = 0;
  /// Type vectors sorted by (size, vector); object 0 is O.
  std::vector<std::vector<int>> objects;
  std::map<std::vector<int>, int> index;
  std::optional<SquaresPresentation> presentation;
  /// Point maps of the presentation's morphisms, by morphism id.
  std::vector<std::vector<int>> morphism_values;

  int object_count() const { return static_cast<int>(objects.size()); }
  int size_of(int object) const { return types->size_of(objects[object]); }
  /// -1 when the vector is outside the truncation.
  int find(const std::vector<int>& vector) const;
  ObjectOverX object(int i) const { return types->realize(objects[i]); }
};

TruncatedSK build_truncated(const GSet& base, int bound, SKOptions options = {});
TruncatedSK build_truncated(std::shared_ptr<const TypeSystem> types, int bound,
                            SKOptions options = {});

/// Injection A → B sending the k-th block of each type to the k-th block of
/// the same type.  Requires A ≤ B componentwise.
GMap standard_injection(const TypeSystem& types, const std::vector<int>& a,
                        const std::vector<int>& b);

struct SKK0 {
  K0Result k0;
  /// Class of a single block of each type.
  std::vector<std::vector<std::int64_t>> type_classes;
  /// Per K0 coordinate, a type vector lifting it.
  std::vector<std::vector<std::int64_t>> lifts;
};

/// K0 of the truncation from the type-level square relations
/// [A] + [B+C−A] = [B] + [C], A ≤ B, A ≤ C, plus [O] = 0.  Isomorphisms
/// are identities on the skeleton, so this is the K0 of the full
/// presentation.
SKK0 sk_k0(const TruncatedSK& category);

/// A functor between truncations, recorded on types (it is additive) and
/// on the truncated objects.
struct SquareFunctor {
  std::shared_ptr<const TypeSystem> source;
  std::shared_ptr<const TypeSystem> target;
  int source_bound = 0;
  int target_bound = 0;
  std::vector<std::vector<int>> type_images;  // per source type
  IntMatrix type_matrix;                      // target types × source types
  ValidationReport report;
};

struct FunctorOptions {
  bool check = true;
  /// Check preservation on the explicit presentation (every injection and
  /// every square) instead of standard injections and standard squares.
  bool exhaustive = false;
  SKOptions sk = {};
};

/// r*: objects over Y → objects over X by canonical pullback along r.
/// Total on the truncation at `bound` when the target bound is
/// bound · max-fiber(r); a smaller explicit `target_bound` throws
/// TruncationError carrying the required bound.
SquareFunctor restriction_functor(const GMap& r, int bound, FunctorOptions options = {},
                                  std::optional<int> target_bound = std::nullopt);
/// r_!: objects over X → objects over Y by post-composition.  The report
/// also covers the unit/counit triangle identities against r*.
SquareFunctor transfer_functor(const GMap& r, int bound, FunctorOptions options = {});

/// Unit M → r*r_!M and counit r_!r*N → N for all objects within bound,
/// checked to be equivariant maps over the base that satisfy both triangle
/// identities.
ValidationReport adjunction_check(const GMap& r, int bound);

/// Φ(M, f) = f⁻¹(eH) and Ψ = induction, compared on all objects within
/// bound.  Axioms: phi_psi, psi_phi, preserves_zero, preserves_coproducts,
/// preserves_injections, preserves_squares.
ValidationReport phi_psi_check(const GroupPtr& group, const Subgroup& h, int bound);

/// A commutative square of G-maps
///   A --q--> C
///   p        k
///   B --h--> D
struct GSetSquare {
  GMap p;
  GMap q;
  GMap h;
  GMap k;
};

/// For every object (M, α) over B within bound, the composite
/// q_! p* M → q_! p* h* h_! M ≅ q_! q* k* h_! M → k* h_! M of unit,
/// pullback comparison and counit is an equivariant bijection over C.
/// Throws PreconditionError unless the square is a pullback.
ValidationReport beck_chevalley_check(const GSetSquare& square, int bound);

/// Pullback squares of maps between the orbits G/K_j: every cospan
/// G/K_a → G/K_c ← G/K_b of equivariant maps, completed by canonical_pullback.
std::vector<GSetSquare> orbit_pullback_squares(const GroupPtr& group);

struct SKMackey {
  MackeyFunctor functor;
  MackeyMorphism comparison;  // to burnside_mackey(G)
  std::vector<int> ranks;     // per level at the bound
  std::vector<int> ranks_check;  // per level at bound + |G|
  bool isomorphism = false;
};

/// Levels k0 over G/K_j, res/tr along G/S_k → G/H_i, con along
/// gK_j ↦ g·w⁻¹·K_j.  Throws StabilizationError when a level's rank moves
/// between the bound and bound + |G|.  Default bound 3|G|.
SKMackey k0_mackey(const GroupPtr& group, std::optional<int> bound = std::nullopt);

/// Splits objects over X₁ ⊔ X₂ into pairs of objects over X₁ and X₂ and
/// compares K0 with the direct sum.
ValidationReport product_split_check(const GSet& x1, const GSet& x2, int bound);

}  // namespace eqsk
