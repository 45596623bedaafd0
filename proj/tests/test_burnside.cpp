#include <random>

#include "doctest.h"
#include "eqsk/burnside.hpp"
#include "eqsk/error.hpp"
#include "support.hpp"

using namespace eqsk;

TEST_CASE("tables of marks of C2 and S3") {
  BurnsideRing c2(test::group("C2"));
  CHECK(c2.table_of_marks() == std::vector<std::vector<std::int64_t>>{{2, 1}, {0, 1}});
  // Classes e, C2, C3, S3.
  BurnsideRing s3(test::group("S3"));
  CHECK(s3.table_of_marks() ==
        std::vector<std::vector<std::int64_t>>{{6, 3, 2, 1}, {0, 1, 0, 1}, {0, 0, 2, 1}, {0, 0, 0, 1}});
}

TEST_CASE("marks by counting fixed points") {
  for (const auto& name : {"C4", "C2xC2", "D4", "Q8", "A4"}) {
    CAPTURE(name);
    BurnsideRing ring(test::group(name));
    const auto& lat = ring.lattice();
    for (int i = 0; i < ring.rank(); ++i)
      for (int j = 0; j < ring.rank(); ++j)
        CHECK(ring.table_of_marks()[i][j] ==
              static_cast<std::int64_t>(fixed_points(ring.orbit(j), lat.representative(i)).size()));
  }
}

TEST_CASE("basis products in S3") {
  BurnsideRing ring(test::group("S3"));
  // G/e × X is |X| copies of G/e.
  for (int j = 0; j < 4; ++j) CHECK(ring.basis_product(0, j) == static_cast<std::int64_t>(6 / ring.lattice().representative(j).order()) * ring.basis(0));
  // G/C2 × G/C2 = G/e + G/C2 (9 points: one fixed diagonal orbit of size 3 plus a free orbit).
  CHECK(ring.basis_product(1, 1) == ring.basis(0) + ring.basis(1));
  // G/C3 × G/C3 = 2 G/C3
  CHECK(ring.basis_product(2, 2) == 2 * ring.basis(2));
  CHECK(ring.mul(ring.one(), ring.basis(2)) == ring.basis(2));
}

TEST_CASE("burnside class of a G-set") {
  auto g = test::group("S3");
  BurnsideRing ring(g);
  const Coproduct u = disjoint_union(ring.orbit(1), disjoint_union(ring.orbit(1), ring.orbit(3)).sum);
  CHECK(ring.burnside_class(u.sum).coefficients == std::vector<std::int64_t>{0, 2, 0, 1});
  CHECK(ring.marks(ring.burnside_class(u.sum)) == std::vector<std::int64_t>{7, 3, 1, 1});
  CHECK_THROWS_AS(ring.marks(BurnsideElement{{1, 2}}), PreconditionError);
}

TEST_CASE("span composition is strictly associative") {
  for (const auto& name : {"C2", "S3", "C2xC2"}) {
    const AssociativityResult r = associativity_test(test::group(name), 100, 6, 7);
    CHECK(r.trials == 100);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("span composition is unital only up to a 2-cell") {
  auto g = test::group("C2");
  BurnsideRing ring(g);
  const GSet x = ring.orbit(0);
  std::mt19937_64 rng(3);
  int strict_failures = 0;
  for (int t = 0; t < 20; ++t) {
    const Span s = random_span(ring.lattice(), x, x, 4, rng);
    const Span left = compose(identity_span(x), s);
    const Span right = compose(s, identity_span(x));
    strict_failures += !(left == s) || !(right == s);
    CHECK(span_iso(left, s).has_value());
    CHECK(span_iso(right, s).has_value());
  }
  CHECK(strict_failures > 0);
}

TEST_CASE("span 2-cells") {
  auto g = test::group("C2");
  BurnsideRing ring(g);
  const GSet free = ring.orbit(0);
  const GSet pt = ring.orbit(1);
  const Span a(GMap::identity(free), GMap::to_point(free));
  const Span b(GMap(free, free, {1, 0}), GMap::to_point(free));
  auto cell = span_iso(a, b);
  REQUIRE(cell.has_value());
  CHECK(cell->iso.values() == std::vector<int>{1, 0});
  const Span c(GMap::to_point(pt), GMap::to_point(pt));
  CHECK_THROWS_AS(span_iso(a, Span(GMap::to_point(free), GMap::to_point(free))), PreconditionError);
  const Coproduct two = disjoint_union(free, free);
  const Span d(GMap(two.sum, free, {0, 1, 0, 1}), GMap::to_point(two.sum));
  CHECK(!span_iso(a, d).has_value());
  CHECK(c.apex().size() == 1);
}
