#include "doctest.h"
#include "eqsk/error.hpp"
#include "eqsk/euler.hpp"
#include "eqsk/io.hpp"
#include "eqsk/mackey.hpp"
#include "support.hpp"

using namespace eqsk;

namespace {

const char* const kComplexes[] = {"c2-rotation-s2.json", "c2-reflection-s1.json", "c2-reflection-s2.json",
                                  "c3-rotation-s2.json"};

}  // namespace

TEST_CASE("spheres with known fixed sets") {
  struct Row {
    const char* file;
    std::vector<std::int64_t> chi;  // orbit basis
    std::vector<std::int64_t> marks;
  };
  // Marks at e are χ of the sphere, at G the χ of the fixed set.
  const Row rows[] = {{"c2-rotation-s2.json", {0, 2}, {2, 2}},
                      {"c2-reflection-s1.json", {-1, 2}, {0, 2}},
                      {"c2-reflection-s2.json", {1, 0}, {2, 0}},
                      {"c3-rotation-s2.json", {0, 2}, {2, 2}}};
  for (const auto& r : rows) {
    CAPTURE(r.file);
    const GCWComplex m = io::read_complex(test::load(r.file));
    BurnsideRing ring(m.group);
    const BurnsideElement chi = euler_characteristic(m, ring);
    CHECK(chi.coefficients == r.chi);
    CHECK(ring.marks(chi) == r.marks);
  }
}

TEST_CASE("marks equal fixed-point Euler characteristics") {
  for (const char* file : kComplexes) {
    const GCWComplex m = io::read_complex(test::load(file));
    BurnsideRing ring(m.group);
    const auto marks = ring.marks(euler_characteristic(m, ring));
    for (int i = 0; i < ring.rank(); ++i) CHECK(marks[i] == fixed_euler(m, ring.lattice().representative(i)));
  }
  // A larger group: S3 acting on a complex with every orbit type.
  auto g = test::group("S3");
  SubgroupLattice lat(g);
  std::vector<Cell> cells;
  for (int j = 0; j < lat.class_count(); ++j) cells.push_back({j, lat.classes()[j].members.back()});
  const GCWComplex m = make_complex(g, cells);
  BurnsideRing ring(g);
  const auto marks = ring.marks(euler_characteristic(m, ring));
  for (const auto& h : lat.subgroups()) CHECK(marks[lat.class_of(h)] == fixed_euler(m, h));
}

TEST_CASE("restriction commutes with the Euler characteristic") {
  for (const char* file : kComplexes) {
    const GCWComplex m = io::read_complex(test::load(file));
    auto lat = std::make_shared<const SubgroupLattice>(m.group);
    const BurnsideLevels levels(lat);
    const MackeyFunctor a = burnside_mackey(levels);
    const auto chi = euler_characteristic(m, BurnsideRing(lat)).coefficients;
    const int top = static_cast<int>(lat->subgroups().size()) - 1;
    for (int j = 0; j < lat->class_count(); ++j) {
      const GCWComplex r = restrict_complex(m, levels.sub(j));
      const auto local = euler_characteristic(r, BurnsideRing(levels.local_ptr(j))).coefficients;
      CHECK(a.restriction(top, lat->representative_index(j)) * chi == local);
    }
  }
}

TEST_CASE("restriction to the trivial group counts cells") {
  const GCWComplex m = io::read_complex(test::load("c3-rotation-s2.json"));
  const GCWComplex r = restrict_complex(m, trivial_subgroup(*m.group));
  // As e-cells: 2 poles, 3 edges, 3 faces.
  int by_dim[3] = {0, 0, 0};
  for (const auto& c : r.cells) ++by_dim[c.dim];
  CHECK(by_dim[0] == 2);
  CHECK(by_dim[1] == 3);
  CHECK(by_dim[2] == 3);
  CHECK(euler_characteristic(r).coefficients == std::vector<std::int64_t>{2});
}

TEST_CASE("complexes are validated") {
  auto g = test::group("C2");
  CHECK_THROWS_AS(make_complex(g, {{-1, whole_group(*g)}}), StructuralError);
  CHECK_THROWS_AS(make_complex(g, {{9, whole_group(*g)}}), StructuralError);
  CHECK_NOTHROW(make_complex(g, {{9, whole_group(*g)}}, {.max_dim = 9}));
  CHECK_THROWS_AS(make_complex(g, {{0, Subgroup{{1}}}}), StructuralError);
  CHECK_THROWS_AS(io::read_complex(nlohmann::json{{"group", "C2"}, {"cells", {{{"dim", 0}, {"stabilizer", {1}}}}}}),
                  StructuralError);
}

TEST_CASE("zero cells and the K0 comparison") {
  auto g = test::group("S3");
  BurnsideRing ring(g);
  for (int j = 0; j < ring.rank(); ++j) CHECK(euler_characteristic(zero_cells(ring.orbit(j)), ring) == ring.basis(j));
  const TruncatedSK cat = build_truncated(GSet::trivial(g, 1), 18);
  const SKK0 k = sk_k0(cat);
  REQUIRE(k.k0.group == FgAbelianGroup{ring.rank(), {}});
  // The images of the K0 coordinates form a basis of A(G): unimodular matrix.
  IntMatrix images(ring.rank(), ring.rank());
  for (int c = 0; c < ring.rank(); ++c) {
    std::vector<std::int64_t> unit(ring.rank(), 0);
    unit[c] = 1;
    const auto image = alpha_pi0(k, cat, unit, ring).coefficients;
    for (int r = 0; r < ring.rank(); ++r) images(r, c) = image[r];
  }
  CHECK(is_unimodular(images));
  // A single orbit's class goes to the orbit.
  for (int t = 0; t < cat.types->type_count(); ++t) {
    const auto image = alpha_pi0(k, cat, k.type_classes[t], ring);
    CHECK(image == ring.basis(ring.lattice().class_of(cat.types->type(t).subgroup)));
  }
  const TruncatedSK over_orbit = build_truncated(ring.orbit(1), 6);
  CHECK_THROWS_AS(alpha_pi0(sk_k0(over_orbit), over_orbit, {1, 0}, ring), PreconditionError);
}
