#include <algorithm>
#include <set>

#include "doctest.h"
#include "eqsk/error.hpp"
#include "eqsk/group.hpp"
#include "support.hpp"

using namespace eqsk;

namespace {

// Brute force: the set of products k·g·h.
std::set<std::vector<int>> double_coset_sets(const FiniteGroup& g, const Subgroup& k, const Subgroup& h) {
  std::set<std::vector<int>> out;
  for (int x = 0; x < g.order(); ++x) {
    std::vector<int> s;
    for (int a : k.elements)
      for (int b : h.elements) s.push_back(g.mul(g.mul(a, x), b));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    out.insert(s);
  }
  return out;
}

std::vector<int> normalizer_oracle(const FiniteGroup& g, const Subgroup& h) {
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x)
    if (conjugate(g, x, h) == h) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("subgroup and class counts of the fixtures") {
  struct Row {
    const char* name;
    int order, subgroups, classes;
  };
  // Hand counts.
  const Row rows[] = {{"e", 1, 1, 1},    {"C2", 2, 2, 2},   {"C3", 3, 2, 2},   {"C4", 4, 3, 3},
                      {"C2xC2", 4, 5, 5}, {"S3", 6, 6, 4},   {"C6", 6, 4, 4},   {"D4", 8, 10, 8},
                      {"Q8", 8, 6, 6},    {"A4", 12, 10, 5}, {"D6", 12, 16, 10}};
  for (const auto& r : rows) {
    CAPTURE(r.name);
    const FiniteGroup g = fixtures::by_name(r.name);
    CHECK(g.order() == r.order);
    CHECK(all_subgroups(g).size() == static_cast<std::size_t>(r.subgroups));
    CHECK(subgroup_classes(g).size() == static_cast<std::size_t>(r.classes));
    CHECK(all_subgroups(g) == all_subgroups_exhaustive(g));
  }
}

TEST_CASE("tables are validated") {
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", {{0, 1}, {1, 1}}), StructuralError);
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", {{1, 0}, {0, 1}}), StructuralError);
  // Latin square with identity but not associative.
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", {{0, 1, 2, 3, 4},
                                                  {1, 0, 3, 4, 2},
                                                  {2, 4, 0, 1, 3},
                                                  {3, 2, 4, 0, 1},
                                                  {4, 3, 1, 2, 0}}),
                  StructuralError);
  CHECK_NOTHROW(FiniteGroup::from_table("C2", {{0, 1}, {1, 0}}));
}

TEST_CASE("permutation generators") {
  const FiniteGroup s3 = from_generators(3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(s3.order() == 6);
  CHECK(s3.labels().size() == 6);
  const FiniteGroup s4 = from_generators(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  CHECK(s4.order() == 24);
  CHECK_THROWS_AS(from_generators(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}, "S4", {.size_cap = 10}), SizeCapError);
  for (int g = 0; g < s4.order(); ++g) CHECK(s4.mul(g, s4.inv(g)) == 0);
}

TEST_CASE("cosets, double cosets and normalizers against brute force") {
  for (const auto& g : fixtures::acceptance_groups()) {
    CAPTURE(g.name());
    const auto subs = all_subgroups(g);
    for (const auto& h : subs) {
      const auto reps = cosets(g, h);
      CHECK(static_cast<int>(reps.size()) * h.order() == g.order());
      CHECK(reps.front() == 0);
      const CosetTable table = coset_table(g, h);
      for (int x = 0; x < g.order(); ++x)
        for (int y : h.elements) CHECK(table.coset_of[x] == table.coset_of[g.mul(x, y)]);
      CHECK(normalizer(g, h).elements == normalizer_oracle(g, h));
      for (const auto& k : subs) {
        const auto dc = double_cosets(g, k, h);
        CHECK(dc.size() == double_coset_sets(g, k, h).size());
        CHECK(std::is_sorted(dc.begin(), dc.end()));
      }
    }
  }
}

TEST_CASE("lattice conjugators carry representatives to members") {
  for (const auto& name : {"S3", "D4", "A4", "D6"}) {
    SubgroupLattice lat(test::group(name));
    const FiniteGroup& g = lat.group();
    for (int s = 0; s < static_cast<int>(lat.subgroups().size()); ++s) {
      const int t = lat.conjugator(s);
      CHECK(conjugate(g, t, lat.representative(lat.class_of(s))) == lat.subgroups()[s]);
      for (int u = 0; u < t; ++u)
        CHECK(conjugate(g, u, lat.representative(lat.class_of(s))) != lat.subgroups()[s]);
    }
  }
  SubgroupLattice lat(test::group("S3"));
  CHECK_THROWS_AS(lat.index_of(Subgroup{{0, 1, 2, 3}}), PreconditionError);
}

TEST_CASE("a subgroup as a group") {
  const FiniteGroup g = fixtures::by_name("D4");
  for (const auto& h : all_subgroups(g)) {
    const SubgroupGroup sub = subgroup_as_group(g, h);
    CHECK(sub.group->order() == h.order());
    for (int a = 0; a < h.order(); ++a)
      for (int b = 0; b < h.order(); ++b)
        CHECK(sub.to_parent[sub.group->mul(a, b)] == g.mul(sub.to_parent[a], sub.to_parent[b]));
    CHECK(sub.to_parent_subgroup(sub.from_parent_subgroup(h)) == h);
  }
}
