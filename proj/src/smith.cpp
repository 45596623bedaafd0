#include "eqsk/smith.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>

#include "eqsk/error.hpp"

namespace eqsk {

namespace {

using BigInt = boost::multiprecision::cpp_int;

struct Overflow {};

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
std::int64_t neg(std::int64_t a) { return sub(0, a); }
std::int64_t abs_of(std::int64_t a) { return a < 0 ? neg(a) : a; }

BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
BigInt neg(const BigInt& a) { return -a; }
BigInt abs_of(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

std::int64_t narrow(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
    throw OverflowError("integer result does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}
std::int64_t narrow(std::int64_t v) { return v; }

// Euclidean floor-free quotient with remainder of the same sign as a.
template <class T>
T quot(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    if (a == INT64_MIN && b == -1) throw Overflow{};
  }
  return a / b;
}

// Quotient rounded to nearest, so the remainder is at most |b|/2.
template <class T>
T nearest_quot(const T& a, const T& b) {
  T q = quot(a, b);
  const T r = sub(a, mul(q, b));
  if (abs_of(add(r, r)) > abs_of(b)) q = ((r < 0) == (b < 0)) ? add(q, T(1)) : sub(q, T(1));
  return q;
}

// g = s·a + t·b, g = gcd(a, b) ≥ 0.
template <class T>
void extended_gcd(const T& a, const T& b, T& g, T& s, T& t) {
  T old_r = a, r = b, old_s = 1, s_ = 0, old_t = 0, t_ = 1;
  while (r != 0) {
    T q = quot(old_r, r);
    T tmp = sub(old_r, mul(q, r));
    old_r = r;
    r = tmp;
    tmp = sub(old_s, mul(q, s_));
    old_s = s_;
    s_ = tmp;
    tmp = sub(old_t, mul(q, t_));
    old_t = t_;
    t_ = tmp;
  }
  if (old_r < 0) {
    old_r = neg(old_r);
    old_s = neg(old_s);
    old_t = neg(old_t);
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

template <class T>
using Dense = std::vector<std::vector<T>>;

template <class T>
Dense<T> identity_dense(int n) {
  Dense<T> m(n, std::vector<T>(n, T(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Dense Smith normal form.  Tracks U (row ops), V (column ops) and V⁻¹.
template <class T>
struct DenseSmith {
  Dense<T> a, u, v, v_inv;
  int m = 0, n = 0;

  DenseSmith(Dense<T> input, int rows, int cols)
      : a(std::move(input)), u(identity_dense<T>(rows)), v(identity_dense<T>(cols)),
        v_inv(identity_dense<T>(cols)), m(rows), n(cols) {}

  void swap_rows(int i, int j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
    std::swap(v_inv[i], v_inv[j]);
  }
  // row_i -= q·row_j
  void row_axpy(int i, int j, const T& q) {
    if (q == 0) return;
    for (int c = 0; c < n; ++c) a[i][c] = sub(a[i][c], mul(q, a[j][c]));
    for (int c = 0; c < m; ++c) u[i][c] = sub(u[i][c], mul(q, u[j][c]));
  }
  // col_i -= q·col_j
  void col_axpy(int i, int j, const T& q) {
    if (q == 0) return;
    for (int r = 0; r < m; ++r) a[r][i] = sub(a[r][i], mul(q, a[r][j]));
    for (int r = 0; r < n; ++r) v[r][i] = sub(v[r][i], mul(q, v[r][j]));
    for (int c = 0; c < n; ++c) v_inv[j][c] = add(v_inv[j][c], mul(q, v_inv[i][c]));
  }
  void negate_row(int i) {
    for (auto& x : a[i]) x = neg(x);
    for (auto& x : u[i]) x = neg(x);
  }

  void run() {
    const int limit = std::min(m, n);
    for (int t = 0; t < limit; ++t) {
      int pr = -1, pc = -1;
      T best = 0;
      for (int r = t; r < m; ++r)
        for (int c = t; c < n; ++c)
          if (a[r][c] != 0 && (pr < 0 || abs_of(a[r][c]) < best)) {
            best = abs_of(a[r][c]);
            pr = r;
            pc = c;
          }
      if (pr < 0) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      while (true) {
        for (int r = t + 1; r < m; ++r)
          if (a[r][t] != 0) row_axpy(r, t, nearest_quot(a[r][t], a[t][t]));
        for (int c = t + 1; c < n; ++c)
          if (a[t][c] != 0) col_axpy(c, t, nearest_quot(a[t][c], a[t][t]));
        // Remainders are at most half the pivot; move the smallest one in.
        int sr = -1, sc = -1;
        T small = 0;
        for (int r = t + 1; r < m; ++r)
          if (a[r][t] != 0 && (sr < 0 || abs_of(a[r][t]) < small)) {
            small = abs_of(a[r][t]);
            sr = r;
          }
        for (int c = t + 1; c < n; ++c)
          if (a[t][c] != 0 && ((sr < 0 && sc < 0) || abs_of(a[t][c]) < small)) {
            small = abs_of(a[t][c]);
            sc = c;
            sr = -1;
          }
        if (sr >= 0) {
          swap_rows(t, sr);
          continue;
        }
        if (sc >= 0) {
          swap_cols(t, sc);
          continue;
        }
        // Divisibility: fold an offending row into the pivot row.
        int bad = -1;
        for (int r = t + 1; r < m && bad < 0; ++r)
          for (int c = t + 1; c < n; ++c)
            if (a[r][c] % a[t][t] != 0) {
              bad = r;
              break;
            }
        if (bad < 0) break;
        row_axpy(t, bad, T(-1));
      }
      if (a[t][t] < 0) negate_row(t);
    }
  }
};

template <class T>
Dense<T> to_dense(const IntMatrix& x) {
  Dense<T> d(x.rows(), std::vector<T>(x.cols()));
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c) d[r][c] = x(r, c);
  return d;
}

template <class T>
IntMatrix from_dense(const Dense<T>& d, int rows, int cols) {
  IntMatrix out(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out(r, c) = narrow(d[r][c]);
  return out;
}

template <class T>
SmithResult smith_impl(const IntMatrix& input) {
  DenseSmith<T> s(to_dense<T>(input), input.rows(), input.cols());
  s.run();
  return SmithResult{from_dense(s.a, s.m, s.n), from_dense(s.u, s.m, s.m), from_dense(s.v, s.n, s.n)};
}

// ---- sparse cokernel -------------------------------------------------------

template <class T>
using Row = std::vector<std::pair<int, T>>;  // ascending columns, nonzero values

// a·x + b·y
template <class T>
Row<T> combine(const T& a, const Row<T>& x, const T& b, const Row<T>& y) {
  Row<T> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      T v = mul(a, x[i].second);
      if (v != 0) out.emplace_back(x[i].first, v);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      T v = mul(b, y[j].second);
      if (v != 0) out.emplace_back(y[j].first, v);
      ++j;
    } else {
      T v = add(mul(a, x[i].second), mul(b, y[j].second));
      if (v != 0) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

template <class T>
std::vector<T> dense_from_slots(const Row<T>& row, int s) {
  std::vector<T> out(s, T(0));
  for (const auto& [c, v] : row) out[c] = v;
  return out;
}

template <class T>
struct Echelon {
  std::vector<std::optional<Row<T>>> pivot;  // keyed by leading (largest) column

  explicit Echelon(int n) : pivot(n) {}

  void insert(Row<T> row) {
    while (!row.empty()) {
      const int p = row.back().first;
      if (!pivot[p]) {
        if (row.back().second < 0)
          for (auto& e : row) e.second = neg(e.second);
        pivot[p] = std::move(row);
        return;
      }
      Row<T>& piv = *pivot[p];
      const T a = row.back().second, b = piv.back().second;
      if (a % b == 0) {
        row = combine<T>(T(1), row, neg(quot(a, b)), piv);
        continue;
      }
      T g, s, t;
      extended_gcd(a, b, g, s, t);
      Row<T> new_pivot = combine<T>(s, row, t, piv);
      Row<T> rest = combine<T>(quot(b, g), row, neg(quot(a, g)), piv);
      piv = std::move(new_pivot);
      row = std::move(rest);
    }
  }
};

// Without the row itself: entry at column c dropped.
template <class T>
Row<T> without(const Row<T>& row, int c) {
  Row<T> out;
  out.reserve(row.size());
  for (const auto& e : row)
    if (e.first != c) out.push_back(e);
  return out;
}

template <class T>
Cokernel cokernel_impl(int n, const std::vector<SparseRow>& relations) {
  std::vector<Row<T>> pending;
  pending.reserve(relations.size());
  for (const auto& rel : relations) {
    std::map<int, T> acc;
    for (const auto& [c, v] : rel) {
      if (c < 0 || c >= n) throw PreconditionError("relation refers to an unknown generator");
      acc[c] = add(acc[c], T(v));
    }
    Row<T> row;
    for (const auto& [c, v] : acc)
      if (v != 0) row.emplace_back(c, v);
    if (!row.empty()) pending.push_back(std::move(row));
  }
  std::stable_sort(pending.begin(), pending.end(),
                   [](const Row<T>& x, const Row<T>& y) { return x.back().first < y.back().first; });

  // A relation with a unit coefficient eliminates that generator: expr[g]
  // writes it over generators still alive at the time.  Substituting in
  // elimination order terminates because expressions only mention
  // generators eliminated later.
  std::vector<int> when(n, -1);
  std::vector<Row<T>> expr(n);
  std::vector<int> eliminated;
  auto substitute = [&](Row<T> row) {
    while (true) {
      int pick = -1;
      T coef = 0;
      for (const auto& [c, v] : row)
        if (when[c] >= 0 && (pick < 0 || when[c] < when[pick])) {
          pick = c;
          coef = v;
        }
      if (pick < 0) return row;
      row = combine<T>(T(1), without(row, pick), coef, expr[pick]);
    }
  };
  std::vector<Row<T>> residual_rows;
  for (auto& raw : pending) {
    Row<T> row = substitute(std::move(raw));
    if (row.empty()) continue;
    int pivot = -1;
    for (auto it = row.rbegin(); it != row.rend(); ++it)
      if (abs_of(it->second) == 1) {
        pivot = it->first;
        break;
      }
    if (pivot < 0) {
      residual_rows.push_back(std::move(row));
      continue;
    }
    T u = 0;
    for (const auto& [c, v] : row)
      if (c == pivot) u = v;
    // u·e_p + rest = 0 with u = ±1
    expr[pivot] = combine<T>(neg(u), without(row, pivot), T(0), Row<T>{});
    when[pivot] = static_cast<int>(eliminated.size());
    eliminated.push_back(pivot);
  }
  for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
    const int g = *it;
    const int t = when[g];
    when[g] = -1;  // g never appears in its own expression
    expr[g] = substitute(std::move(expr[g]));
    when[g] = t;
  }

  std::vector<int> survivor_slot(n, -1);
  std::vector<int> survivors;
  for (int c = 0; c < n; ++c)
    if (when[c] < 0) {
      survivor_slot[c] = static_cast<int>(survivors.size());
      survivors.push_back(c);
    }
  const int s = static_cast<int>(survivors.size());
  auto dense = [&](const Row<T>& row) {
    std::vector<T> out(s, T(0));
    for (const auto& [c, v] : row) out[survivor_slot[c]] = v;
    return out;
  };
  std::vector<std::vector<T>> expr_dense(n);
  for (int c = 0; c < n; ++c) {
    if (when[c] >= 0) {
      expr_dense[c] = dense(expr[c]);
    } else {
      expr_dense[c].assign(s, T(0));
      expr_dense[c][survivor_slot[c]] = 1;
    }
  }
  Echelon<T> ech(s);
  for (auto& r : residual_rows) {
    Row<T> row;
    for (const auto& [c, v] : substitute(std::move(r))) row.emplace_back(survivor_slot[c], v);
    std::sort(row.begin(), row.end());
    ech.insert(std::move(row));
  }
  Dense<T> residual;
  for (const auto& p : ech.pivot)
    if (p) residual.push_back(dense_from_slots<T>(*p, s));
  const int rows = static_cast<int>(residual.size());
  DenseSmith<T> smith(residual, rows, s);
  smith.run();
  std::vector<T> diag(s, T(0));
  for (int i = 0; i < std::min(rows, s); ++i) diag[i] = smith.a[i][i];

  // Output coordinates: free (diag 0) first, then torsion (diag ≥ 2) ascending.
  std::vector<int> free_cols, torsion_cols;
  for (int i = 0; i < s; ++i) {
    if (diag[i] == 0)
      free_cols.push_back(i);
    else if (diag[i] != 1)
      torsion_cols.push_back(i);
  }
  Cokernel out;
  out.group.free_rank = static_cast<int>(free_cols.size());
  for (int i : torsion_cols) out.group.torsion.push_back(narrow(diag[i]));
  std::vector<int> coords = free_cols;
  coords.insert(coords.end(), torsion_cols.begin(), torsion_cols.end());

  out.classes.assign(n, std::vector<std::int64_t>(coords.size(), 0));
  for (int c = 0; c < n; ++c) {
    for (std::size_t k = 0; k < coords.size(); ++k) {
      T v = 0;
      for (int j = 0; j < s; ++j)
        if (expr_dense[c][j] != 0) v = add(v, mul(expr_dense[c][j], smith.v[j][coords[k]]));
      if (diag[coords[k]] != 0) {
        v %= diag[coords[k]];
        if (v < 0) v = add(v, diag[coords[k]]);
      }
      out.classes[c][k] = narrow(v);
    }
  }
  for (int col : coords) {
    SparseRow lift;
    for (int j = 0; j < s; ++j)
      if (smith.v_inv[col][j] != 0) lift.emplace_back(survivors[j], narrow(smith.v_inv[col][j]));
    out.lifts.push_back(std::move(lift));
  }
  return out;
}

}  // namespace

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, int cols) {
  if (cols < 0) cols = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  IntMatrix m(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols) throw StructuralError("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
  return out;
}

std::vector<std::int64_t> IntMatrix::column(int c) const {
  std::vector<std::int64_t> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("matrix product dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  try {
    for (int r = 0; r < a.rows(); ++r)
      for (int k = 0; k < a.cols(); ++k) {
        const std::int64_t x = a(r, k);
        if (x == 0) continue;
        for (int c = 0; c < b.cols(); ++c) out(r, c) = add(out(r, c), mul(x, b(k, c)));
      }
  } catch (const Overflow&) {
    throw OverflowError("matrix product overflows 64 bits");
  }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw StructuralError("matrix sum dimension mismatch");
  IntMatrix out(a.rows(), a.cols());
  try {
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) out(r, c) = add(a(r, c), b(r, c));
  } catch (const Overflow&) {
    throw OverflowError("matrix sum overflows 64 bits");
  }
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) { return a + (-1) * b; }

IntMatrix operator*(std::int64_t k, const IntMatrix& a) {
  IntMatrix out = a;
  try {
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) out(r, c) = mul(k, a(r, c));
  } catch (const Overflow&) {
    throw OverflowError("matrix scaling overflows 64 bits");
  }
  return out;
}

std::vector<std::int64_t> operator*(const IntMatrix& a, const std::vector<std::int64_t>& x) {
  if (a.cols() != static_cast<int>(x.size())) throw StructuralError("matrix-vector dimension mismatch");
  std::vector<std::int64_t> out(a.rows(), 0);
  try {
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) out[r] = add(out[r], mul(a(r, c), x[c]));
  } catch (const Overflow&) {
    throw OverflowError("matrix-vector product overflows 64 bits");
  }
  return out;
}

int SmithResult::rank() const { return static_cast<int>(invariant_factors().size()); }

std::vector<std::int64_t> SmithResult::invariant_factors() const {
  std::vector<std::int64_t> out;
  for (int i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0) out.push_back(S(i, i));
  return out;
}

SmithResult smith_normal_form(const IntMatrix& a) {
  try {
    return smith_impl<std::int64_t>(a);
  } catch (const Overflow&) {
    return smith_impl<BigInt>(a);
  }
}

std::int64_t determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw PreconditionError("determinant of a non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1;
  Dense<BigInt> m = to_dense<BigInt>(a);
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return narrow(BigInt(sign) * m[n - 1][n - 1]);
}

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  const std::int64_t d = determinant(a);
  return d == 1 || d == -1;
}

void FgAbelianGroup::validate() const {
  if (free_rank < 0) throw StructuralError("negative free rank");
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw StructuralError("invariant factors must be at least 2");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0)
      throw StructuralError("invariant factors must form a divisibility chain");
  }
}

std::vector<std::int64_t> FgAbelianGroup::reduce(std::vector<std::int64_t> element) const {
  if (static_cast<int>(element.size()) != dimension())
    throw PreconditionError("element has wrong dimension for abelian group");
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    auto& x = element[free_rank + i];
    x %= torsion[i];
    if (x < 0) x += torsion[i];
  }
  return element;
}

Cokernel cokernel(int generators, const std::vector<SparseRow>& relations) {
  try {
    return cokernel_impl<std::int64_t>(generators, relations);
  } catch (const Overflow&) {
    return cokernel_impl<BigInt>(generators, relations);
  }
}

Cokernel cokernel(const IntMatrix& relations) {
  std::vector<SparseRow> rows;
  for (int r = 0; r < relations.rows(); ++r) {
    SparseRow row;
    for (int c = 0; c < relations.cols(); ++c)
      if (relations(r, c) != 0) row.emplace_back(c, relations(r, c));
    rows.push_back(std::move(row));
  }
  return cokernel(relations.cols(), rows);
}

}  // namespace eqsk
