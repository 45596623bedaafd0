#include "doctest.h"
#include "eqsk/error.hpp"
#include "eqsk/io.hpp"
#include "support.hpp"

using namespace eqsk;
using nlohmann::json;

TEST_CASE("groups") {
  const GroupPtr c2 = io::read_group(test::load("c2.json"));
  CHECK(*c2 == fixtures::cyclic(2));
  CHECK(*io::read_group("D4") == fixtures::dihedral(4));
  const GroupPtr s3 = io::read_group(json{{"degree", 3}, {"generators", {{1, 0, 2}, {1, 2, 0}}}});
  CHECK(s3->order() == 6);
  const GroupPtr back = io::read_group(io::write_group(fixtures::alternating4()));
  CHECK(*back == fixtures::alternating4());
  CHECK_THROWS_AS(io::read_group("Z7"), StructuralError);
  CHECK_THROWS_AS(io::read_group(json{{"schema", "other/2"}, {"name", "x"}, {"order", 1}, {"table", {{0}}}}),
                  StructuralError);
  CHECK_THROWS_AS(io::read_group(json{{"order", 2}, {"table", {{0, 1}, {1, 1}}}}), StructuralError);
}

TEST_CASE("G-sets, maps and spans") {
  const GroupPtr g = io::read_group("S3");
  BurnsideRing ring(g);
  const GSet x = disjoint_union(ring.orbit(1), ring.orbit(2)).sum;
  CHECK(io::read_gset(io::write_gset(x), g) == x);
  const GMap f = GMap::to_point(x);
  CHECK(io::read_gmap(io::write_gmap(f), g) == f);
  const Span s(GMap::identity(x), f);
  CHECK(io::read_span(io::write_span(s), g) == s);
  json broken = io::write_gset(x);
  broken["action"][1][0] = 1;
  CHECK_THROWS_AS(io::read_gset(broken, g), StructuralError);
}

TEST_CASE("subgroups and matrices") {
  const FiniteGroup g = fixtures::symmetric3();
  for (const auto& h : all_subgroups(g)) CHECK(io::read_subgroup(io::write_subgroup(h), g) == h);
  CHECK_THROWS_AS(io::read_subgroup(json{0, 1, 3}, g), StructuralError);
  const IntMatrix m = IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  CHECK(io::read_matrix(io::write_matrix(m), 2, 3) == m);
  CHECK_THROWS_AS(io::read_matrix(io::write_matrix(m), 3, 2), StructuralError);
}

TEST_CASE("Mackey functors") {
  for (const auto& name : {"C2", "S3", "D4"}) {
    const MackeyFunctor m = burnside_mackey(io::read_group(name));
    const MackeyFunctor back = io::read_mackey(io::write_mackey(m));
    CHECK(back.levels == m.levels);
    CHECK(back.res == m.res);
    CHECK(back.tr == m.tr);
    CHECK(back.con == m.con);
  }
  json doc = test::load("c2-burnside.json");
  doc["tr"].erase(0);
  CHECK_THROWS_AS(io::read_mackey(doc), StructuralError);
}

TEST_CASE("presentations and complexes") {
  const SquaresPresentation p = io::read_presentation(test::load("one-object.json"));
  const SquaresPresentation back = io::read_presentation(io::write_presentation(p));
  CHECK(back.objects == p.objects);
  CHECK(back.morphisms == p.morphisms);
  CHECK(back.comp == p.comp);
  CHECK(back.coproducts == p.coproducts);
  CHECK(back.squares == p.squares);
  json bad = test::load("one-object.json");
  bad["squares"][0] = {0, 0, 0};
  CHECK_THROWS_AS(io::read_presentation(bad), StructuralError);
  const GCWComplex m = io::read_complex(test::load("c2-rotation-s2.json"));
  const GCWComplex again = io::read_complex(io::write_complex(m));
  CHECK(again.cells == m.cells);
}

TEST_CASE("reports") {
  ValidationReport r;
  r.axioms.push_back({"a", true, ""});
  r.axioms.push_back({"b", false, R"({"x":1})"});
  const json doc = io::write_report(r);
  CHECK(doc["passed"] == false);
  CHECK(doc["axioms"][1]["witness"]["x"] == 1);
  CHECK(!doc["axioms"][0].contains("witness"));
  CHECK(io::tagged(json::object())["schema"] == io::kSchema);
}
