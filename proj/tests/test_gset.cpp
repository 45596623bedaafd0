#include <algorithm>
#include <functional>

#include "doctest.h"
#include "eqsk/error.hpp"
#include "eqsk/gset.hpp"
#include "support.hpp"

using namespace eqsk;

namespace {

GSet orbit(const GroupPtr& g, int class_index) {
  SubgroupLattice lat(g);
  return coset_space(g, lat.representative(class_index));
}

// Every function X → Y, filtered by equivariance.
std::size_t hom_count_oracle(const GSet& x, const GSet& y) {
  std::size_t count = 0;
  std::vector<int> f(x.size(), 0);
  std::function<void(int)> go = [&](int i) {
    if (i == x.size()) {
      for (int g = 0; g < x.group().order(); ++g)
        for (int p = 0; p < x.size(); ++p)
          if (f[x.act(g, p)] != y.act(g, f[p])) return;
      ++count;
      return;
    }
    for (int v = 0; v < y.size(); ++v) {
      f[i] = v;
      go(i + 1);
    }
  };
  go(0);
  return count;
}

}  // namespace

TEST_CASE("actions are validated") {
  auto c2 = test::group("C2");
  CHECK_NOTHROW(GSet(c2, 2, {{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(GSet(c2, 2, {{1, 0}, {1, 0}}), StructuralError);
  CHECK_THROWS_AS(GSet(c2, 2, {{0, 1}, {0, 0}}), StructuralError);
  auto c3 = test::group("C3");
  // A transposition cannot be the action of an element of order 3.
  CHECK_THROWS_AS(GSet(c3, 2, {{0, 1}, {1, 0}, {1, 0}}), StructuralError);
  const GSet x = GSet(c2, 2, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(GMap(x, GSet::trivial(c2, 2), {0, 1}), StructuralError);
}

TEST_CASE("orbits and stabilizers of coset spaces") {
  auto g = test::group("S3");
  SubgroupLattice lat(g);
  for (int j = 0; j < lat.class_count(); ++j) {
    const GSet x = coset_space(g, lat.representative(j));
    CHECK(x.size() * lat.representative(j).order() == 6);
    CHECK(orbits(x).size() == 1);
    CHECK(stabilizer(x, 0) == lat.representative(j));
    CHECK(orbit_type(x, lat) == std::vector<int>{j});
  }
}

TEST_CASE("canonical pullback is the lexicographic fiber product") {
  auto g = test::group("S3");
  const GSet a = orbit(g, 0), b = orbit(g, 1), pt = GSet::trivial(g, 1);
  const Pullback p = canonical_pullback(GMap::to_point(a), GMap::to_point(b));
  REQUIRE(p.apex.size() == a.size() * b.size());
  int i = 0;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y, ++i) {
      CHECK(p.first(i) == x);
      CHECK(p.second(i) == y);
    }
  // Over a nontrivial base: G/e → G/C2 against itself.
  const auto maps = hom_set(a, b);
  REQUIRE(!maps.empty());
  const Pullback q = canonical_pullback(maps[0], maps[0]);
  CHECK(q.apex.size() == 6 * 2);
  for (int k = 0; k < q.apex.size(); ++k) CHECK(maps[0](q.first(k)) == maps[0](q.second(k)));
  CHECK(pt.size() == 1);
}

TEST_CASE("pushout along injections") {
  auto g = test::group("C2");
  const GSet one = GSet::trivial(g, 1), free = orbit(g, 0);
  const Coproduct b = disjoint_union(one, free);
  const Coproduct c = disjoint_union(one, one);
  const Pushout d = pushout_along_injections(b.in_left, c.in_left);
  CHECK(d.apex.size() == b.sum.size() + c.sum.size() - one.size());
  CHECK(d.from_b.injective());
  CHECK(d.from_c.injective());
  // C comes first.
  for (int x = 0; x < c.sum.size(); ++x) CHECK(d.from_c(x) == x);
  CHECK(b.in_left.then(d.from_b) == c.in_left.then(d.from_c));
}

TEST_CASE("hom sets against exhaustive enumeration") {
  for (const auto& name : {"C2", "C3", "S3", "C2xC2"}) {
    auto g = test::group(name);
    SubgroupLattice lat(g);
    std::vector<GSet> sets;
    for (int j = 0; j < lat.class_count(); ++j) sets.push_back(orbit(g, j));
    sets.push_back(disjoint_union(sets.back(), sets.front()).sum);
    for (const auto& x : sets)
      for (const auto& y : sets) {
        if (x.size() > 6 || y.size() > 7) continue;
        CHECK(hom_set(x, y).size() == hom_count_oracle(x, y));
      }
  }
  auto g = test::group("S3");
  CHECK_THROWS_AS(hom_set(orbit(g, 0), orbit(g, 0), {.cap = 3}), SizeCapError);
}

TEST_CASE("isomorphism by orbit type") {
  auto g = test::group("S3");
  SubgroupLattice lat(g);
  const GSet a = disjoint_union(orbit(g, 1), orbit(g, 2)).sum;
  const GSet b = disjoint_union(orbit(g, 2), orbit(g, 1)).sum;
  auto f = iso(a, b, lat);
  REQUIRE(f.has_value());
  CHECK(f->bijective());
  CHECK(!iso(a, disjoint_union(orbit(g, 1), orbit(g, 1)).sum, lat).has_value());
  // Conjugate stabilizers give isomorphic orbits.
  const Subgroup other = lat.classes()[1].members.back();
  CHECK(iso(coset_space(g, other), orbit(g, 1), lat).has_value());
}

TEST_CASE("restriction and induction") {
  auto g = test::group("S3");
  SubgroupLattice lat(g);
  const Subgroup h = lat.representative(2);
  const SubgroupGroup sub = subgroup_as_group(*g, h);
  const GSet r = restrict_to(orbit(g, 1), sub);
  CHECK(r.size() == 3);
  CHECK(orbits(r).size() == 1);
  const GSet s = GSet::trivial(sub.group, 2);
  const Induced ind = induce(g, h, sub, s);
  CHECK(ind.total.size() == 2 * 2);
  CHECK(ind.to_cosets.surjective());
  CHECK(orbit_type(ind.total, lat) == std::vector<int>{2, 2});
}
