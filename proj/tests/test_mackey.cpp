#include "doctest.h"
#include "eqsk/error.hpp"
#include "eqsk/io.hpp"
#include "eqsk/mackey.hpp"
#include "support.hpp"

using namespace eqsk;

namespace {

std::vector<std::string> failed_axioms(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& a : r.axioms)
    if (!a.passed) out.push_back(a.axiom);
  return out;
}

}  // namespace

TEST_CASE("Burnside functor of C2 by hand") {
  const MackeyFunctor m = burnside_mackey(test::group("C2"));
  // Level e: ℤ{[e/e]}.  Level C2: ℤ{[C2/e], [C2/C2]}.
  CHECK(m.levels[0] == FgAbelianGroup{1, {}});
  CHECK(m.levels[1] == FgAbelianGroup{2, {}});
  CHECK(m.res.at({1, 0}) == IntMatrix::from_rows({{2, 1}}));
  CHECK(m.tr.at({1, 0}) == IntMatrix::from_rows({{1}, {0}}));
  CHECK(validate(m).passed());
}

TEST_CASE("Burnside functors of the small fixtures are Mackey functors") {
  for (const auto& g : fixtures::acceptance_groups()) {
    if (g.order() > 12) continue;
    CAPTURE(g.name());
    auto lat = std::make_shared<const SubgroupLattice>(std::make_shared<const FiniteGroup>(g));
    const BurnsideLevels levels(lat);
    const MackeyFunctor m = burnside_mackey(levels);
    const ValidationReport r = validate(m);
    CHECK(failed_axioms(r).empty());
    for (int j = 0; j < lat->class_count(); ++j) CHECK(m.dimension(j) == levels.rank(j));
    const int n = static_cast<int>(lat->subgroups().size());
    for (int k = 0; k < n; ++k)
      for (int h = 0; h < n; ++h) {
        const auto check = cross_check_double_cosets(levels, m, k, h);
        CHECK_MESSAGE(check.passed, check.witness);
      }
  }
}

TEST_CASE("restriction of G/e counts cosets") {
  // res^G_e [G/K] = [G:K] [e/e]
  auto g = test::group("A4");
  const MackeyFunctor m = burnside_mackey(g);
  const IntMatrix r = m.restriction(static_cast<int>(m.lattice->subgroups().size()) - 1, 0);
  for (int j = 0; j < m.lattice->class_count(); ++j) CHECK(r(0, j) == 12 / m.lattice->representative(j).order());
}

TEST_CASE("orbit data regenerates the functor") {
  for (const auto& name : {"S3", "D4", "A4"}) {
    const MackeyFunctor m = burnside_mackey(test::group(name));
    const MackeyFunctor back = mackey_from_orbit_data(orbit_data(m));
    CHECK(back.res == m.res);
    CHECK(back.tr == m.tr);
    CHECK(back.con == m.con);
  }
}

TEST_CASE("inconsistent orbit data is rejected") {
  const MackeyFunctor m = burnside_mackey(test::group("S3"));
  OrbitData data = orbit_data(m);
  auto& entry = data.tr.begin()->second;
  entry = 3 * entry;
  CHECK_THROWS_AS(mackey_from_orbit_data(data), ValidationError);
}

TEST_CASE("the doubled transfer fails only the double coset formula") {
  const MackeyFunctor bad = io::read_mackey(test::load("c2-burnside-bad-transfer.json"));
  CHECK(failed_axioms(validate(bad)) == std::vector<std::string>{"double_coset"});
  const MackeyFunctor good = io::read_mackey(test::load("c2-burnside.json"));
  CHECK(validate(good).passed());
}

TEST_CASE("zero functor") {
  auto lat = std::make_shared<const SubgroupLattice>(test::group("D4"));
  CHECK(validate(zero_mackey(lat)).passed());
}

TEST_CASE("morphisms") {
  const MackeyFunctor m = burnside_mackey(test::group("S3"));
  std::vector<IntMatrix> id;
  for (int j = 0; j < m.lattice->class_count(); ++j) id.push_back(IntMatrix::identity(m.dimension(j)));
  MackeyMorphism phi{m, m, id};
  CHECK(check_morphism(phi).passed());
  CHECK(is_isomorphism(phi));
  // Doubling commutes with everything but is not invertible.
  for (auto& c : phi.components) c = 2 * c;
  CHECK(check_morphism(phi).passed());
  CHECK(!is_isomorphism(phi));
  // A non-natural component.
  phi.components = id;
  phi.components[0](0, 0) = -1;
  CHECK(!check_morphism(phi).passed());
}

TEST_CASE("equality modulo torsion") {
  const FgAbelianGroup z3{0, {3}};
  CHECK(equal_in(z3, IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{4}})));
  CHECK(!equal_in(z3, IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{2}})));
  CHECK(is_group_isomorphism(IntMatrix::from_rows({{2}}), z3, z3));
  CHECK(!is_group_isomorphism(IntMatrix::from_rows({{3}}), z3, z3));
}

TEST_CASE("Weyl transversals") {
  SubgroupLattice lat(test::group("S3"));
  CHECK(weyl_transversal(lat, 0).size() == 6);
  CHECK(weyl_transversal(lat, 1).size() == 1);
  CHECK(weyl_transversal(lat, 2).size() == 2);
  CHECK(weyl_transversal(lat, 3).size() == 1);
  CHECK(weyl_transversal(lat, 0).front() == 0);
}
