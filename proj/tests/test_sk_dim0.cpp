#include <functional>
#include <random>

#include "doctest.h"
#include "eqsk/error.hpp"
#include "eqsk/sk_dim0.hpp"
#include "support.hpp"

using namespace eqsk;

namespace {

// Multiplicity vectors over the given block sizes with total size ≤ bound.
int count_vectors(const std::vector<int>& sizes, int bound) {
  std::function<int(std::size_t, int)> go = [&](std::size_t t, int left) {
    if (t == sizes.size()) return 1;
    int n = 0;
    for (int k = 0; k * sizes[t] <= left; ++k) n += go(t + 1, left - k * sizes[t]);
    return n;
  };
  return go(0, bound);
}

GSet orbit(const GroupPtr& g, int j) { return coset_space(g, SubgroupLattice(g).representative(j)); }

}  // namespace

TEST_CASE("types over a point are the subgroup classes") {
  for (const auto& name : {"e", "C2", "S3", "D4"}) {
    auto g = test::group(name);
    SubgroupLattice lat(g);
    TypeSystem ts(GSet::trivial(g, 1));
    REQUIRE(ts.type_count() == lat.class_count());
    for (int t = 0; t < ts.type_count(); ++t) CHECK(ts.type(t).size * ts.type(t).subgroup.order() == g->order());
  }
}

TEST_CASE("types over G/H are the subgroup classes of H") {
  auto g = test::group("S3");
  SubgroupLattice lat(g);
  for (int j = 0; j < lat.class_count(); ++j) {
    TypeSystem ts(orbit(g, j));
    SubgroupLattice local(subgroup_as_group(*g, lat.representative(j)).group);
    CHECK(ts.type_count() == local.class_count());
  }
}

TEST_CASE("object counts match the partition count") {
  for (const auto& name : {"e", "C2", "C3", "S3"}) {
    auto g = test::group(name);
    for (int j = 0; j < SubgroupLattice(g).class_count(); ++j) {
      const auto base = orbit(g, j);
      const int bound = 2 * g->order();
      const TruncatedSK cat = build_truncated(base, bound);
      std::vector<int> sizes;
      for (int t = 0; t < cat.types->type_count(); ++t) sizes.push_back(cat.types->type(t).size);
      CHECK(cat.object_count() == count_vectors(sizes, bound));
      CHECK(cat.objects[0] == std::vector<int>(sizes.size(), 0));
    }
  }
  CHECK(build_truncated(GSet::trivial(test::group("S3"), 1), 0).object_count() == 1);
  CHECK(sk_k0(build_truncated(GSet::trivial(test::group("S3"), 1), 0)).k0.group.is_trivial());
  const TruncatedSK sets = build_truncated(GSet::trivial(test::group("e"), 1), 3);
  CHECK(sets.object_count() == 4);
  CHECK(sk_k0(sets).k0.group == FgAbelianGroup{1, {}});
  // C2-sets of size ≤ 4: 9 classes including ∅.
  CHECK(build_truncated(GSet::trivial(test::group("C2"), 1), 4).object_count() == 9);
  CHECK_THROWS_AS(build_truncated(GSet::trivial(test::group("S3"), 1), 30, {.object_cap = 100}), SizeCapError);
}

TEST_CASE("canonicalization") {
  auto g = test::group("S3");
  BurnsideRing ring(g);
  const GSet base = ring.orbit(1);
  TypeSystem ts(base);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const GSet m = random_gset(ring.lattice(), 12, rng);
    for (const GMap& f : hom_set(m, base)) {
      const auto c = ts.canonicalize(m, f);
      CHECK(c.vector == ts.classify(m, f));
      CHECK(c.iso.bijective());
      const ObjectOverX r = ts.realize(c.vector);
      CHECK(c.iso.then(f) == r.structure_map);
      break;
    }
  }
}

TEST_CASE("standard injections") {
  auto g = test::group("C3");
  TypeSystem ts(GSet::trivial(g, 1));
  const GMap f = standard_injection(ts, {1, 1}, {2, 3});
  CHECK(f.injective());
  CHECK(f.source().size() == 4);
  CHECK(f.target().size() == 9);
  CHECK_THROWS_AS(standard_injection(ts, {2, 0}, {1, 5}), PreconditionError);
}

TEST_CASE("full presentation of C2-sets over a point") {
  const TruncatedSK cat = build_truncated(GSet::trivial(test::group("C2"), 1), 4, {.presentation = true});
  REQUIRE(cat.presentation.has_value());
  CHECK(check_axioms(*cat.presentation).passed());
  const K0Result full = k0(*cat.presentation);
  const SKK0 skeletal = sk_k0(cat);
  CHECK(full.group == skeletal.k0.group);
  CHECK(full.group == FgAbelianGroup{2, {}});
  for (const auto& sq : cat.presentation->squares)
    CHECK(cat.size_of(sq.a) + cat.size_of(sq.d) == cat.size_of(sq.b) + cat.size_of(sq.c));
}

TEST_CASE("restriction along the identity") {
  auto g = test::group("S3");
  const GSet x = orbit(g, 1);
  const SquareFunctor f = restriction_functor(GMap::identity(x), 6);
  CHECK(f.report.passed());
  for (int t = 0; t < static_cast<int>(f.type_images.size()); ++t) {
    std::vector<int> unit(f.type_images.size(), 0);
    unit[t] = 1;
    CHECK(f.type_images[t] == unit);
  }
}

TEST_CASE("K0 over orbits is A(H)") {
  for (const auto& name : {"e", "C2", "C3", "C2xC2", "S3"}) {
    auto g = test::group(name);
    SubgroupLattice lat(g);
    for (int j = 0; j < lat.class_count(); ++j) {
      CAPTURE(name);
      CAPTURE(j);
      const SKK0 k = sk_k0(build_truncated(orbit(g, j), 3 * g->order()));
      SubgroupLattice local(subgroup_as_group(*g, lat.representative(j)).group);
      CHECK(k.k0.group == FgAbelianGroup{local.class_count(), {}});
    }
  }
}

TEST_CASE("restriction and transfer along C2/e → pt") {
  auto g = test::group("C2");
  const GMap r = GMap::to_point(orbit(g, 0));
  const SquareFunctor res = restriction_functor(r, 4);
  CHECK(res.report.passed());
  // Types over pt: C2/e, C2/C2.  Over C2/e: one type.
  CHECK(res.type_images == std::vector<std::vector<int>>{{2}, {1}});
  const SquareFunctor tr = transfer_functor(r, 4);
  CHECK(tr.report.passed());
  CHECK(tr.type_images == std::vector<std::vector<int>>{{1, 0}});
  try {
    restriction_functor(r, 4, {}, 5);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.required_bound() == 8);
  }
  CHECK(adjunction_check(r, 4).passed());
  CHECK(restriction_functor(r, 4, {.exhaustive = true}).report.passed());
}

TEST_CASE("fiber and induction") {
  for (const auto& name : {"C2", "S3"}) {
    auto g = test::group(name);
    SubgroupLattice lat(g);
    for (int j = 0; j < lat.class_count(); ++j) {
      const ValidationReport r = phi_psi_check(g, lat.representative(j), 2 * g->order());
      CHECK_MESSAGE(r.passed(), name, " ", j);
    }
  }
}

TEST_CASE("induction from the trivial subgroup of C2") {
  auto g = test::group("C2");
  const GSet free = orbit(g, 0);
  // A set of k points over C2/e corresponds to k free orbits.
  const TruncatedSK cat = build_truncated(free, 6);
  for (int i = 0; i < cat.object_count(); ++i) CHECK(cat.size_of(i) == 2 * cat.objects[i][0]);
  CHECK(phi_psi_check(g, trivial_subgroup(*g), 6).passed());
}

TEST_CASE("Beck-Chevalley for C2") {
  auto g = test::group("C2");
  const auto squares = orbit_pullback_squares(g);
  CHECK(!squares.empty());
  for (const auto& sq : squares) CHECK(beck_chevalley_check(sq, 6).passed());
  // A commutative square that is not a pullback.
  const GSet free = orbit(g, 0), pt = orbit(g, 1);
  const GSetSquare bad{GMap::to_point(free), GMap::to_point(free), GMap::identity(pt), GMap::identity(pt)};
  CHECK_THROWS_AS(beck_chevalley_check(bad, 6), PreconditionError);
}

TEST_CASE("K0 Mackey functor of C2") {
  auto g = test::group("C2");
  const SKMackey m = k0_mackey(g);
  CHECK(m.isomorphism);
  CHECK(m.ranks == std::vector<int>{1, 2});
  CHECK(m.ranks_check == m.ranks);
  CHECK(validate(m.functor).passed());
  CHECK(check_morphism(m.comparison).passed());
  CHECK_THROWS_AS(k0_mackey(g, 3), PreconditionError);
}

TEST_CASE("objects over a disjoint union split") {
  auto g = test::group("S3");
  CHECK(product_split_check(orbit(g, 1), orbit(g, 3), 12).passed());
}
