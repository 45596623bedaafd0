#pragma once

// Exact integer linear algebra: dense integer matrices, Smith normal form,
// finitely generated abelian groups and cokernels of relation lattices.
//
// Arithmetic runs on int64 with overflow checks; an overflowing computation
// is redone with arbitrary precision and narrowed back.  A result that does
// not fit int64 raises OverflowError.

#include <cstdint>
#include <utility>
#include <vector>

namespace eqsk {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, int cols = -1);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::int64_t& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::int64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<std::vector<std::int64_t>> to_rows() const;
  std::vector<std::int64_t> column(int c) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(std::int64_t k, const IntMatrix& a);
std::vector<std::int64_t> operator*(const IntMatrix& a, const std::vector<std::int64_t>& x);

/// U·A·V = S with S diagonal, s_0 | s_1 | … nonnegative, U and V unimodular.
struct SmithResult {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;

  int rank() const;
  /// Nonzero diagonal entries in order.
  std::vector<std::int64_t> invariant_factors() const;
};

SmithResult smith_normal_form(const IntMatrix& a);

/// Exact determinant of a square matrix (fraction-free elimination).
std::int64_t determinant(const IntMatrix& a);
bool is_unimodular(const IntMatrix& a);

/// ℤ^free_rank ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k with d_1 | d_2 | … and each d_i ≥ 2.
/// Elements are coordinate vectors, free coordinates first.
struct FgAbelianGroup {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;

  int dimension() const noexcept { return free_rank + static_cast<int>(torsion.size()); }
  bool is_trivial() const noexcept { return dimension() == 0; }
  bool is_free() const noexcept { return torsion.empty(); }
  /// Throws StructuralError when the invariant factors are not a chain.
  void validate() const;
  /// Reduces torsion coordinates into [0, d_i).
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> element) const;

  bool operator==(const FgAbelianGroup&) const = default;
};

using SparseRow = std::vector<std::pair<int, std::int64_t>>;

/// ℤ^generators modulo the row span of the relations.
struct Cokernel {
  FgAbelianGroup group;
  /// Coordinates of the class of each generator.
  std::vector<std::vector<std::int64_t>> classes;
  /// For each coordinate, an integer combination of generators whose class
  /// is that coordinate's unit vector.
  std::vector<SparseRow> lifts;
};

/// Sparse relations, duplicates within a row summed.  Unit pivots are
/// eliminated before a dense Smith form of what remains, so the invariant
/// factors do not depend on relation or generator order.
Cokernel cokernel(int generators, const std::vector<SparseRow>& relations);
Cokernel cokernel(const IntMatrix& relations);

}  // namespace eqsk
