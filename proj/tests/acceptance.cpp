// One line per acceptance criterion: PASS/FAIL, a short summary, wall time.
// Exit status 1 when any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "eqsk/error.hpp"
#include "eqsk/euler.hpp"
#include "eqsk/io.hpp"
#include "eqsk/mackey.hpp"
#include "eqsk/sk_dim0.hpp"
#include "eqsk/squares.hpp"

using namespace eqsk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

GroupPtr group(const std::string& name) { return std::make_shared<const FiniteGroup>(fixtures::by_name(name)); }

nlohmann::json load(const std::string& file) {
  std::ifstream in(std::string(EQSK_TEST_DATA) + "/" + file);
  return nlohmann::json::parse(in);
}

const char* const kSkGroups[] = {"e", "C2", "C3", "C2xC2", "S3"};

// Each check returns "" on success, otherwise the first problem found, and
// appends a summary to `note`.
using Check = std::function<std::string(std::string& note)>;

std::string group_counts(std::string& note) {
  const std::map<std::string, std::pair<std::size_t, std::size_t>> known = {
      {"S3", {6, 4}}, {"D4", {10, 8}}, {"A4", {10, 5}}};
  double slowest = 0;
  for (const auto& g : fixtures::acceptance_groups()) {
    const auto t0 = Clock::now();
    const auto subs = all_subgroups(g);
    const auto classes = subgroup_classes(g);
    const double t = seconds_since(t0);
    slowest = std::max(slowest, t);
    if (subs != all_subgroups_exhaustive(g)) return g.name() + ": subgroups differ from the exhaustive oracle";
    if (auto it = known.find(g.name());
        it != known.end() && std::make_pair(subs.size(), classes.size()) != it->second)
      return g.name() + ": wrong subgroup or class count";
    if (t >= 1.0) return g.name() + ": slower than 1 s";
  }
  note = "10 groups, slowest " + std::to_string(slowest) + " s";
  return "";
}

std::string marks(std::string& note) {
  int pairs = 0;
  for (const auto& g : fixtures::acceptance_groups()) {
    BurnsideRing ring(std::make_shared<const FiniteGroup>(g));
    const auto& lat = ring.lattice();
    const auto& m = ring.table_of_marks();
    for (int i = 0; i < ring.rank(); ++i) {
      for (int j = 0; j < i; ++j)
        if (m[i][j] != 0) return g.name() + ": not upper triangular";
      const Subgroup& h = lat.representative(i);
      if (m[i][i] != normalizer(g, h).order() / h.order()) return g.name() + ": diagonal is not |N(H)|/|H|";
    }
    for (int i = 0; i < ring.rank(); ++i)
      for (int j = 0; j < ring.rank(); ++j, ++pairs) {
        const auto prod = ring.marks(ring.basis_product(i, j));
        for (int k = 0; k < ring.rank(); ++k)
          if (prod[k] != m[k][i] * m[k][j]) return g.name() + ": marks not multiplicative";
      }
  }
  note = std::to_string(pairs) + " basis pairs";
  return "";
}

std::string associativity(std::string& note) {
  const AssociativityResult r = associativity_test(group("S3"), 500, 6, 20240601);
  if (r.failures != 0) return "associativity failed: " + r.witness;
  // Unit law: only up to a 2-cell.
  BurnsideRing ring(group("C2"));
  std::mt19937_64 rng(1);
  int strict = 0;
  for (int t = 0; t < 20; ++t) {
    const Span s = random_span(ring.lattice(), ring.orbit(0), ring.orbit(0), 4, rng);
    const Span u = compose(identity_span(s.source()), s);
    if (!span_iso(u, s)) return "unit law fails up to 2-cell";
    strict += u == s;
  }
  if (strict == 20) return "strict unit law held on every sample";
  note = "500 triples over S3; strict unit law fails on " + std::to_string(20 - strict) + "/20";
  return "";
}

std::string burnside_functors(std::string& note) {
  int pairs = 0;
  for (const auto& g : fixtures::acceptance_groups()) {
    if (g.order() > 12) continue;
    auto lat = std::make_shared<const SubgroupLattice>(std::make_shared<const FiniteGroup>(g));
    const BurnsideLevels levels(lat);
    const MackeyFunctor m = burnside_mackey(levels);
    if (const auto* bad = validate(m).first_failure()) return g.name() + ": " + bad->axiom + " " + bad->witness;
    const int n = static_cast<int>(lat->subgroups().size());
    for (int k = 0; k < n; ++k)
      for (int h = 0; h < n; ++h, ++pairs)
        if (auto c = cross_check_double_cosets(levels, m, k, h); !c.passed) return g.name() + ": " + c.witness;
  }
  note = std::to_string(pairs) + " subgroup pairs cross-checked";
  return "";
}

std::string sk_ranks(std::string& note) {
  int cases = 0;
  for (const char* name : kSkGroups) {
    auto g = group(name);
    SubgroupLattice lat(g);
    for (int j = 0; j < lat.class_count(); ++j, ++cases) {
      const GSet base = coset_space(g, lat.representative(j));
      const int expected = SubgroupLattice(subgroup_as_group(*g, lat.representative(j)).group).class_count();
      for (int bound : {3 * g->order(), 4 * g->order()}) {
        const FgAbelianGroup k = sk_k0(build_truncated(base, bound)).k0.group;
        if (k != FgAbelianGroup{expected, {}})
          return std::string(name) + " class " + std::to_string(j) + " bound " + std::to_string(bound) +
                 ": K0 is not free of rank " + std::to_string(expected);
      }
    }
  }
  note = std::to_string(cases) + " (G, H) pairs at 3|G| and 4|G|";
  return "";
}

std::string sk_mackey(std::string& note) {
  for (const char* name : kSkGroups) {
    const SKMackey m = k0_mackey(group(name));
    if (!m.isomorphism) return std::string(name) + ": comparison is not an isomorphism";
    if (!validate(m.functor).passed()) return std::string(name) + ": K0 functor is not a Mackey functor";
    if (!check_morphism(m.comparison).passed()) return std::string(name) + ": comparison is not natural";
  }
  note = "e, C2, C3, C2xC2, S3";
  return "";
}

std::string beck_chevalley(std::string& note) {
  const auto squares = orbit_pullback_squares(group("S3"));
  for (const auto& sq : squares)
    if (const auto r = beck_chevalley_check(sq, 12); !r.passed())
      return r.first_failure()->axiom + " " + r.first_failure()->witness;
  note = std::to_string(squares.size()) + " pullback squares, objects of size <= 12";
  return "";
}

std::string phi_psi(std::string& note) {
  int pairs = 0;
  for (const char* name : kSkGroups) {
    auto g = group(name);
    SubgroupLattice lat(g);
    for (const auto& h : lat.subgroups()) {
      ++pairs;
      if (const auto r = phi_psi_check(g, h, 3 * g->order()); !r.passed())
        return std::string(name) + ": " + r.first_failure()->axiom + " " + r.first_failure()->witness;
    }
  }
  note = std::to_string(pairs) + " (G, H) pairs at 3|G|";
  return "";
}

std::string euler(std::string& note) {
  int checks = 0;
  for (const char* file :
       {"c2-rotation-s2.json", "c2-reflection-s1.json", "c2-reflection-s2.json", "c3-rotation-s2.json"}) {
    const GCWComplex m = io::read_complex(load(file));
    auto lat = std::make_shared<const SubgroupLattice>(m.group);
    const BurnsideRing ring(lat);
    const BurnsideElement chi = euler_characteristic(m, ring);
    const auto mk = ring.marks(chi);
    for (const auto& k : lat->subgroups()) {
      ++checks;
      if (mk[lat->class_of(k)] != fixed_euler(m, k)) return std::string(file) + ": marks differ from fixed_euler";
    }
    const BurnsideLevels levels(lat);
    const MackeyFunctor a = burnside_mackey(levels);
    const int top = static_cast<int>(lat->subgroups().size()) - 1;
    for (int j = 0; j < lat->class_count(); ++j, ++checks) {
      const auto local =
          euler_characteristic(restrict_complex(m, levels.sub(j)), BurnsideRing(levels.local_ptr(j))).coefficients;
      if (a.restriction(top, lat->representative_index(j)) * chi.coefficients != local)
        return std::string(file) + ": res of chi differs from chi of the restriction";
    }
  }
  note = std::to_string(checks) + " exact comparisons";
  return "";
}

std::string negatives(std::string& note) {
  const std::pair<const char*, const char*> cases[] = {
      {"negative-i.json", "i"},   {"negative-ii.json", "ii"}, {"negative-iii.json", "iii"},
      {"negative-iv.json", "iv"}, {"negative-v.json", "v"},   {"negative-cocartesian.json", "cocartesian"}};
  for (const auto& [file, axiom] : cases) {
    const ValidationReport r = check_axioms(io::read_presentation(load(file)));
    const AxiomResult& a = r.at(axiom);
    if (a.passed || a.witness.empty()) return std::string(file) + ": axiom " + axiom + " not rejected";
    nlohmann::json::parse(a.witness);
  }
  if (!check_axioms(io::read_presentation(load("finite-sets-2.json"))).passed())
    return "uncorrupted presentation rejected";
  const ValidationReport m = validate(io::read_mackey(load("c2-burnside-bad-transfer.json")));
  for (const auto& a : m.axioms)
    if (a.passed == (a.axiom == "double_coset")) return "corrupted Mackey functor: unexpected result for " + a.axiom;
  note = "6 presentations and 1 Mackey functor rejected";
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;  // seconds, 0 for none
    Check check;
  };
  const Criterion criteria[] = {
      {"subgroup and class counts against the exhaustive oracle", 0, group_counts},
      {"tables of marks", 5, marks},
      {"strict associativity of span composition", 10, associativity},
      {"Burnside Mackey functors and double coset cross-check", 30, burnside_functors},
      {"K0 of the truncated category over G/H is free of rank #classes(H)", 60, sk_ranks},
      {"K0 Mackey functor isomorphic to the Burnside Mackey functor", 0, sk_mackey},
      {"Beck-Chevalley for S3", 60, beck_chevalley},
      {"fiber/induction equivalence", 0, phi_psi},
      {"equivariant Euler characteristics", 0, euler},
      {"negative fixtures", 0, negatives},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    std::string note, problem;
    const auto t0 = Clock::now();
    try {
      problem = c.check(note);
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double t = seconds_since(t0);
    if (problem.empty() && c.limit > 0 && t >= c.limit) problem = "over the time limit";
    const bool ok = problem.empty();
    failures += !ok;
    std::printf("%s %2d %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", index, c.name, ok ? note.c_str() : problem.c_str(), t);
  }
  return failures == 0 ? 0 : 1;
}
