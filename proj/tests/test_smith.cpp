#include <random>

#include "doctest.h"
#include "eqsk/error.hpp"
#include "eqsk/smith.hpp"

using namespace eqsk;

namespace {

void check_smith(const IntMatrix& a) {
  const SmithResult s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.S);
  CHECK(is_unimodular(s.U));
  CHECK(is_unimodular(s.V));
  for (int r = 0; r < s.S.rows(); ++r)
    for (int c = 0; c < s.S.cols(); ++c)
      if (r != c) CHECK(s.S(r, c) == 0);
  const auto d = s.invariant_factors();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] > 0);
    if (i + 1 < d.size()) CHECK(d[i + 1] % d[i] == 0);
  }
}

}  // namespace

TEST_CASE("textbook Smith forms") {
  const IntMatrix a = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(smith_normal_form(a).invariant_factors() == std::vector<std::int64_t>{2, 6, 12});
  check_smith(a);
  const IntMatrix b = IntMatrix::from_rows({{2, 0}, {0, 3}});
  CHECK(smith_normal_form(b).invariant_factors() == std::vector<std::int64_t>{1, 6});
  const IntMatrix z(3, 2);
  CHECK(smith_normal_form(z).rank() == 0);
  check_smith(IntMatrix::from_rows({{0, 0, 5}}));
}

TEST_CASE("determinants") {
  CHECK(determinant(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})) == -144);
  CHECK(determinant(IntMatrix::identity(4)) == 1);
  CHECK(is_unimodular(IntMatrix::from_rows({{2, 1}, {1, 1}})));
  CHECK(!is_unimodular(IntMatrix::from_rows({{2, 0}, {0, 1}})));
}

TEST_CASE("random matrices: |det| is the product of invariant factors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 5;
    IntMatrix a(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) a(r, c) = entry(rng);
    check_smith(a);
    const SmithResult s = smith_normal_form(a);
    const std::int64_t det = determinant(a);
    if (det == 0) {
      CHECK(s.rank() < n);
    } else {
      std::int64_t prod = 1;
      for (auto d : s.invariant_factors()) prod *= d;
      CHECK(prod == (det < 0 ? -det : det));
    }
  }
}

TEST_CASE("large entries go through exact arithmetic") {
  const std::int64_t big = 1'000'000'000'000'000;
  const IntMatrix a = IntMatrix::from_rows({{big, big + 1}, {big - 1, big}});
  const SmithResult s = smith_normal_form(a);
  CHECK(s.invariant_factors() == std::vector<std::int64_t>{1, 1});
  CHECK(is_unimodular(a));
}

TEST_CASE("cokernels") {
  // ℤ² / ⟨(2, 0), (0, 3)⟩ ≅ ℤ/6
  Cokernel c = cokernel(2, {{{0, 2}}, {{1, 3}}});
  CHECK(c.group.free_rank == 0);
  CHECK(c.group.torsion == std::vector<std::int64_t>{6});
  // ℤ³ / ⟨e0 − e1⟩ ≅ ℤ², with e0 and e1 in the same class.
  c = cokernel(3, {{{0, 1}, {1, -1}}});
  CHECK(c.group.free_rank == 2);
  CHECK(c.classes[0] == c.classes[1]);
  CHECK(c.classes[0] != c.classes[2]);
  // Duplicates in a row add up.
  c = cokernel(1, {{{0, 2}, {0, 2}}});
  CHECK(c.group.torsion == std::vector<std::int64_t>{4});
  // Lifts map to unit vectors.
  c = cokernel(3, {{{0, 2}, {1, 4}}, {{2, 1}, {0, -1}}});
  for (std::size_t k = 0; k < c.lifts.size(); ++k) {
    std::vector<std::int64_t> v(c.group.dimension(), 0);
    for (const auto& [gen, coef] : c.lifts[k])
      for (int d = 0; d < c.group.dimension(); ++d) v[d] += coef * c.classes[gen][d];
    std::vector<std::int64_t> unit(c.group.dimension(), 0);
    unit[k] = 1;
    CHECK(c.group.reduce(v) == unit);
  }
}

TEST_CASE("finitely generated abelian groups") {
  FgAbelianGroup a{1, {2, 4}};
  CHECK_NOTHROW(a.validate());
  CHECK(a.reduce({5, 3, -1}) == std::vector<std::int64_t>{5, 1, 3});
  CHECK_THROWS_AS((FgAbelianGroup{0, {2, 3}}.validate()), StructuralError);
  CHECK_THROWS_AS((FgAbelianGroup{0, {1}}.validate()), StructuralError);
}
