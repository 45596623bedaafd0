#include <algorithm>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "eqsk/error.hpp"
#include "eqsk/io.hpp"
#include "eqsk/sk_dim0.hpp"
#include "eqsk/squares.hpp"
#include "support.hpp"

using namespace eqsk;

namespace {

// Finite sets of size ≤ 2 and their injections: objects ∅, 1, 2.
SquaresPresentation finite_sets() {
  auto e = test::group("e");
  return *build_truncated(GSet::trivial(e, 1), 2, {.presentation = true}).presentation;
}

void drop(SquaresPresentation& p, const Square& s) {
  auto it = std::find(p.squares.begin(), p.squares.end(), s);
  REQUIRE(it != p.squares.end());
  p.squares.erase(it);
}

std::vector<std::string> failed_axioms(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& a : r.axioms)
    if (!a.passed) out.push_back(a.axiom);
  return out;
}

nlohmann::json witness(const ValidationReport& r, const std::string& axiom) {
  return nlohmann::json::parse(r.at(axiom).witness);
}

}  // namespace

TEST_CASE("finite sets of size at most 2") {
  const SquaresPresentation p = finite_sets();
  CHECK(p.objects.size() == 3);
  // id, ∅→1, ∅→2, id, two maps 1→2, two automorphisms of 2
  CHECK(p.morphisms.size() == 8);
  CHECK_NOTHROW(check_structure(p));
  CHECK(check_axioms(p).passed());
  const K0Result k = k0(p);
  CHECK(k.group == FgAbelianGroup{1, {}});
  // [2] = 2[1]
  CHECK(k.classes[2][0] == 2 * k.classes[1][0]);
  CHECK(k.classes[0][0] == 0);
}

TEST_CASE("one object") {
  const SquaresPresentation p = io::read_presentation(test::load("one-object.json"));
  CHECK(check_axioms(p).passed());
  CHECK(k0(p).group.is_trivial());
}

TEST_CASE("structural errors") {
  SquaresPresentation p = finite_sets();
  p.comp.pop_back();
  CHECK_THROWS_AS(check_structure(p), StructuralError);
  p = finite_sets();
  p.morphisms[7].iso = false;
  CHECK_THROWS_AS(check_structure(p), StructuralError);
  p = finite_sets();
  p.comp[0][2] = 1;
  CHECK_THROWS_AS(check_structure(p), StructuralError);
}

// One corrupted copy of finite-sets-2.json per axiom.
TEST_CASE("negative: coproduct closure") {
  const SquaresPresentation p = io::read_presentation(test::load("negative-i.json"));
  const ValidationReport r = check_axioms(p);
  REQUIRE(!r.at("i").passed);
  const auto w = witness(r, "i");
  CHECK(w["reason"] == "coproduct square is not distinguished");
  CHECK(w["missing"]["objects"] == nlohmann::json::array({0, 1, 1, 2}));
  CHECK_THROWS_AS(k0(p), PreconditionError);
}

TEST_CASE("negative: commutativity") {
  const ValidationReport r = check_axioms(io::read_presentation(test::load("negative-ii.json")));
  CHECK(failed_axioms(r) == std::vector<std::string>{"ii"});
  CHECK(witness(r, "ii")["reason"] == "square does not commute");
}

TEST_CASE("negative: isomorphisms in both classes") {
  const ValidationReport r = check_axioms(io::read_presentation(test::load("negative-iii.json")));
  CHECK(failed_axioms(r) == std::vector<std::string>{"iii"});
  CHECK(witness(r, "iii")["morphism"] == 7);
  CHECK(witness(r, "iii")["vertical"] == false);
}

TEST_CASE("negative: squares with isomorphism legs") {
  const ValidationReport r = check_axioms(io::read_presentation(test::load("negative-iv.json")));
  CHECK(failed_axioms(r) == std::vector<std::string>{"iv"});
  CHECK(witness(r, "iv")["missing"]["objects"] == nlohmann::json::array({1, 1, 1, 1}));
}

TEST_CASE("negative: distinguished object not initial") {
  const ValidationReport r = check_axioms(io::read_presentation(test::load("negative-v.json")));
  REQUIRE(!r.at("v").passed);
  CHECK(witness(r, "v")["object"] == 0);
  CHECK(witness(r, "v")["horizontal_from_O"].empty());
}

TEST_CASE("negative: missing coproduct with O") {
  const ValidationReport r = check_axioms(io::read_presentation(test::load("negative-cocartesian.json")));
  CHECK(failed_axioms(r) == std::vector<std::string>{"cocartesian"});
  CHECK(witness(r, "cocartesian")["reason"] == "no coproduct with O");
}

TEST_CASE("the uncorrupted file passes") {
  CHECK(check_axioms(io::read_presentation(test::load("finite-sets-2.json"))).passed());
}

TEST_CASE("forced K0 skips the axioms") {
  SquaresPresentation p = finite_sets();
  drop(p, {0, 1, 1, 2, 1, 1, 5, 4});
  CHECK(k0(p, {.force = true}).group == FgAbelianGroup{1, {}});
}

TEST_CASE("K0 from bare relations") {
  // Objects O, a, b, c with [O] + [c] = [a] + [b] and a ≅ b.
  const K0Result k = k0_relations(4, 0, {{0, 1, 2, 3}}, {{1, 2}});
  CHECK(k.group == FgAbelianGroup{1, {}});
  CHECK(k.classes[3][0] == 2 * k.classes[1][0]);
  // [O] + [O] = [a] + [a] leaves ℤ/2.
  const K0Result t = k0_relations(2, 0, {{0, 1, 1, 0}}, {});
  CHECK(t.group == FgAbelianGroup{0, {2}});
}

TEST_CASE("one square on five objects") {
  // O, A, B, C, D with the single relation [A] + [D] = [B] + [C].
  const K0Result k = k0_relations(5, 0, {{1, 2, 3, 4}}, {});
  CHECK(k.group == FgAbelianGroup{3, {}});
}

TEST_CASE("finite sets of size at most 4 give the integers") {
  auto e = test::group("e");
  const TruncatedSK cat = build_truncated(GSet::trivial(e, 1), 4, {.presentation = true});
  const K0Result k = k0(*cat.presentation);
  REQUIRE(k.group == FgAbelianGroup{1, {}});
  // The one-point set generates.
  const int point = cat.find({1});
  CHECK(std::abs(k.classes[point][0]) == 1);
  for (int x = 0; x < cat.object_count(); ++x) CHECK(k.classes[x][0] == cat.size_of(x) * k.classes[point][0]);
}

TEST_CASE("all commutative squares contain the distinguished ones") {
  const SquaresPresentation p = finite_sets();
  auto all = all_commutative_squares(p);
  std::sort(all.begin(), all.end());
  for (const auto& s : p.squares) CHECK(std::binary_search(all.begin(), all.end(), s));
  CHECK(all.size() >= p.squares.size());
}

TEST_CASE("Waldhausen fragment") {
  // 0, a, b with 0 → a and 0 → b; a and b have no common target.
  WaldhausenData w;
  w.objects = {"0", "a", "b"};
  w.zero = 0;
  w.morphisms = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}};
  w.cofibrations = {0, 1, 2, 3, 4};
  w.weak_equivalences = {0, 1, 2};
  w.comp = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {0, 3, 3}, {3, 1, 3}, {0, 4, 4}, {4, 2, 4}};
  w.coproducts = {{0, 0, 0, 0, 0}, {0, 1, 1, 3, 1}, {1, 0, 1, 1, 3}, {0, 2, 2, 4, 2}, {2, 0, 2, 2, 4}};
  CHECK_THROWS_AS(from_waldhausen(w), IncompletenessError);
  const SquaresPresentation p = from_waldhausen(w, {.skip_missing_pushouts = true});
  CHECK(p.objects.size() == 3);
  for (const auto& m : p.morphisms) CHECK(m.vertical);
  CHECK(!p.morphisms[3].iso);
  // Inside the fragment a is the pushout of a ← 0 → a, so [a] = [a] + [a].
  const Square fold{0, 1, 1, 1, 3, 3, 1, 1};
  CHECK(std::find(p.squares.begin(), p.squares.end(), fold) != p.squares.end());
  CHECK(p.squares.size() == 9);
  CHECK(check_axioms(p).passed());
  CHECK(k0(p).group.is_trivial());
}
