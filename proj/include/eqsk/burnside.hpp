#pragma once

// The Burnside 2-category at the level of 1- and 2-cells (spans of G-sets
// composed by canonical pullback) and the Burnside ring A(G) with its table
// of marks.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eqsk/gset.hpp"

namespace eqsk {

/// X ← A → Y
struct Span {
  GMap left;   // A → X
  GMap right;  // A → Y

  Span(GMap left_leg, GMap right_leg);

  const GSet& apex() const { return left.source(); }
  const GSet& source() const { return left.target(); }
  const GSet& target() const { return right.target(); }

  bool operator==(const Span& other) const {
    return left == other.left && right == other.right;
  }
};

Span identity_span(const GSet& y);

/// Apex is canonical_pullback(s.right, t.left).  Strictly associative on the
/// nose; unital only up to a 2-cell.
Span compose(const Span& s, const Span& t);

/// An apex bijection commuting with both legs.
struct Span2Cell {
  GMap iso;  // A → A'
  Span source;
  Span target;
};

std::optional<Span2Cell> span_iso(const Span& s, const Span& t);

struct BurnsideElement {
  std::vector<std::int64_t> coefficients;

  bool operator==(const BurnsideElement&) const = default;
};

BurnsideElement operator+(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement operator-(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement operator*(std::int64_t k, const BurnsideElement& a);

/// A(G) in the basis [G/K_j] of subgroup-class representatives, ascending.
///
/// The basis product table is computed on first use and shared between
/// threads.
class BurnsideRing {
 public:
  explicit BurnsideRing(GroupPtr group);
  explicit BurnsideRing(std::shared_ptr<const SubgroupLattice> lattice);

  const FiniteGroup& group() const { return lattice_->group(); }
  const SubgroupLattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const SubgroupLattice>& lattice_ptr() const { return lattice_; }
  int rank() const { return lattice_->class_count(); }

  BurnsideElement zero() const;
  BurnsideElement one() const;
  BurnsideElement basis(int j) const;
  /// G/K_j
  GSet orbit(int j) const;

  BurnsideElement burnside_class(const GSet& x) const;
  /// M[i][j] = |(G/K_j)^{H_i}|
  const std::vector<std::vector<std::int64_t>>& table_of_marks() const { return marks_; }
  std::vector<std::int64_t> marks(const BurnsideElement& a) const;
  BurnsideElement mul(const BurnsideElement& a, const BurnsideElement& b) const;
  /// [G/K_i]·[G/K_j], from the orbit decomposition of G/K_i × G/K_j.
  const BurnsideElement& basis_product(int i, int j) const;

 private:
  void check(const BurnsideElement& a) const;

  std::shared_ptr<const SubgroupLattice> lattice_;
  std::vector<std::vector<std::int64_t>> marks_;
  mutable std::once_flag products_once_;
  mutable std::vector<BurnsideElement> products_;
};

/// A disjoint union of random orbits G/K_j, total size at most `max_size`.
GSet random_gset(const SubgroupLattice& lattice, int max_size, std::mt19937_64& rng);

/// A random span X ← A → Y.  Each apex orbit G/K_j is chosen among the
/// classes with K_j-fixed points in both X and Y and mapped to random fixed
/// points; |A| ≤ max_apex.
Span random_span(const SubgroupLattice& lattice, const GSet& x, const GSet& y, int max_apex,
                 std::mt19937_64& rng);

struct AssociativityResult {
  int trials = 0;
  int failures = 0;
  std::string witness;  // JSON, the first failing trial
};

/// (s∘t)∘u == s∘(t∘u) as data on `trials` random composable triples.
AssociativityResult associativity_test(GroupPtr group, int trials, int max_apex, std::uint64_t seed,
                                       int max_base = 4);

}  // namespace eqsk
