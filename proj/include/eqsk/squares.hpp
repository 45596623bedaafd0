#pragma once

// Finite categories with squares given by complete composition data, the
// axiom checker, and K0 by Smith normal form.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eqsk/report.hpp"
#include "eqsk/smith.hpp"

namespace eqsk {

struct Morphism {
  int source = 0;
  int target = 0;
  bool horizontal = false;
  bool vertical = false;
  bool iso = false;  // must agree with the composition table

  bool operator==(const Morphism&) const = default;
};

/// left ⊔ right = object with injections in_left, in_right.
struct CoproductEntry {
  int left = 0;
  int right = 0;
  int object = 0;
  int in_left = 0;
  int in_right = 0;

  bool operator==(const CoproductEntry&) const = default;
};

///   A --top--> B
///   |          |
///  left      right
///   v          v
///   C --bottom-> D
struct Square {
  int a = 0, b = 0, c = 0, d = 0;
  int top = 0, left = 0, right = 0, bottom = 0;

  bool operator==(const Square&) const = default;
  auto operator<=>(const Square&) const = default;
};

struct SquaresPresentation {
  std::vector<std::string> objects;
  int distinguished = 0;
  std::vector<Morphism> morphisms;
  /// [f, g, h] means h = g∘f (f first).
  std::vector<std::array<int, 3>> comp;
  std::vector<CoproductEntry> coproducts;
  std::vector<Square> squares;
};

/// Range checks, endpoint consistency, totality, unitality and
/// associativity of comp, iso flags against actual inverses.  Throws
/// StructuralError.
void check_structure(const SquaresPresentation& p);

/// Checks: subcategories, i, ii, iii, iv, v, cocartesian.  Squares whose
/// coproduct involves an object missing from the coproduct table are exempt
/// from (i); likewise pairs without a coproduct entry for the cocartesian
/// check.
ValidationReport check_axioms(const SquaresPresentation& p);

struct K0Result {
  FgAbelianGroup group;
  std::vector<std::vector<std::int64_t>> classes;  // per object
  /// Per coordinate of `group`, a combination of objects with that class.
  std::vector<SparseRow> lifts;
};

struct K0Options {
  bool force = false;  // skip the axiom check
};

/// ℤ[objects] / ([O], [A]+[D]−[B]−[C] per square, [X]−[Y] per iso).
/// Throws PreconditionError when the axioms fail and `force` is off.
K0Result k0(const SquaresPresentation& p, K0Options options = {});

/// The same quotient from bare relations.  Objects joined by an
/// identification are collapsed before the cokernel is taken.
K0Result k0_relations(int object_count, int distinguished,
                      const std::vector<std::array<int, 4>>& squares,
                      const std::vector<std::pair<int, int>>& identifications);

/// A finite fragment of a Waldhausen category.
struct WaldhausenData {
  std::vector<std::string> objects;
  int zero = 0;
  std::vector<std::pair<int, int>> morphisms;  // (source, target)
  std::vector<int> cofibrations;               // morphism ids
  std::vector<int> weak_equivalences;          // morphism ids
  std::vector<std::array<int, 3>> comp;
  std::vector<CoproductEntry> coproducts;
};

struct WaldhausenOptions {
  /// Skip spans whose pushout lies outside the fragment instead of raising
  /// IncompletenessError.  For truncations of infinite categories.
  bool skip_missing_pushouts = false;
};

/// Horizontal = cofibrations, vertical = all morphisms, squares = commuting
/// squares with cofibration top and bottom whose comparison map out of the
/// pushout B ∪_A C is a weak equivalence.
SquaresPresentation from_waldhausen(const WaldhausenData& data, WaldhausenOptions options = {});

/// Every commuting square with horizontal top/bottom and vertical legs.
std::vector<Square> all_commutative_squares(const SquaresPresentation& p);

}  // namespace eqsk
