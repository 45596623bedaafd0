// eqsk: command-line front end.  Exit codes: 0 success, 1 a check failed,
// 2 malformed input or usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eqsk/burnside.hpp"
#include "eqsk/error.hpp"
#include "eqsk/euler.hpp"
#include "eqsk/io.hpp"
#include "eqsk/mackey.hpp"
#include "eqsk/sk_dim0.hpp"
#include "eqsk/squares.hpp"

using namespace eqsk;
using json = nlohmann::json;

namespace {

struct Settings {
  std::string format = "json";
  std::uint64_t seed = 20240601;
  int trunc = -1;
  std::string out;
};

struct Failed {
  json doc;
};

json load(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot read " + path);
    buf << in.rdbuf();
  }
  try {
    json doc = json::parse(buf.str());
    io::check_schema(doc);
    return doc;
  } catch (const json::parse_error& e) {
    throw StructuralError(path + ": " + e.what());
  }
}

// A fixture name, or a JSON file holding a group or a document with "group".
GroupPtr group_arg(const std::string& ref) {
  if (std::filesystem::exists(ref)) {
    json doc = load(ref);
    return io::read_group(doc.contains("group") ? doc.at("group") : doc);
  }
  return io::read_group(json(ref));
}

std::size_t env_cap(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  try {
    return static_cast<std::size_t>(std::stoull(v));
  } catch (const std::exception&) {
    throw StructuralError(std::string(name) + " is not a number");
  }
}

SKOptions sk_options() {
  SKOptions o;
  o.object_cap = env_cap("EQSK_OBJECT_CAP", o.object_cap);
  o.presentation_cap = env_cap("EQSK_PRESENTATION_CAP", o.presentation_cap);
  return o;
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump(-1, ' ', true);
}

bool is_matrix(const json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != v.front().size()) return false;
    for (const auto& x : row)
      if (!x.is_number_integer()) return false;
  }
  return true;
}

void render_matrix(std::ostream& os, const json& m, const std::string& indent) {
  std::size_t width = 1;
  for (const auto& row : m)
    for (const auto& x : row) width = std::max(width, x.dump().size());
  for (const auto& row : m) {
    os << indent;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string s = row[i].dump();
      os << (i ? " " : "") << std::string(width - s.size(), ' ') << s;
    }
    os << "\n";
  }
}

std::string render_table(const json& doc) {
  std::ostringstream os;
  std::size_t width = 0;
  for (auto& [k, v] : doc.items()) width = std::max(width, k.size());
  for (auto& [k, v] : doc.items()) {
    if (k == "schema") continue;
    if (is_matrix(v)) {
      os << k << ":\n";
      render_matrix(os, v, "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << k << ":\n";
      std::vector<std::string> cols;
      for (auto& [ck, cv] : v.front().items()) cols.push_back(ck);
      std::vector<std::size_t> w(cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c) w[c] = cols[c].size();
      for (const auto& row : v)
        for (std::size_t c = 0; c < cols.size(); ++c) w[c] = std::max(w[c], cell(row.value(cols[c], json())).size());
      os << " ";
      for (std::size_t c = 0; c < cols.size(); ++c) os << " " << cols[c] << std::string(w[c] - cols[c].size(), ' ');
      os << "\n";
      for (const auto& row : v) {
        os << " ";
        for (std::size_t c = 0; c < cols.size(); ++c) {
          const std::string s = cell(row.value(cols[c], json()));
          os << " " << s << std::string(w[c] - s.size(), ' ');
        }
        os << "\n";
      }
    } else {
      os << k << std::string(width - k.size(), ' ') << "  " << cell(v) << "\n";
    }
  }
  return os.str();
}

void emit(const Settings& s, const json& doc) {
  const json tagged = io::tagged(doc);
  const std::string text = s.format == "table" ? render_table(tagged) : tagged.dump(-1, ' ', true) + "\n";
  if (s.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(s.out);
    if (!out) throw StructuralError("cannot write " + s.out);
    out << text;
  }
}

// Emits and flags a failed check (exit 1).
void emit_checked(const Settings& s, const json& doc, bool passed) {
  emit(s, doc);
  if (!passed) throw Failed{doc};
}

int trunc_or(const Settings& s, int fallback) { return s.trunc >= 0 ? s.trunc : fallback; }

Subgroup subgroup_arg(const std::string& text, const SubgroupLattice& lat, int class_index) {
  if (!text.empty()) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error&) {
      throw StructuralError("--subgroup expects a JSON list of element indices");
    }
    return io::read_subgroup(doc, lat.group());
  }
  if (class_index < 0 || class_index >= lat.class_count()) throw StructuralError("--class out of range");
  return lat.representative(class_index);
}

json subgroup_row(const SubgroupLattice& lat, int s) {
  const Subgroup& h = lat.subgroups()[s];
  const FiniteGroup& g = lat.group();
  return json{{"index", s}, {"order", h.order()}, {"class", lat.class_of(s)},
              {"normal", normalizer(g, h).order() == g.order()}, {"elements", h.elements}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant scissors congruence at dimension 0: groups, Burnside rings, Mackey functors, "
               "categories with squares"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", s.seed, "Seed for randomized tests");
  app.add_option("--trunc", s.trunc, "Truncation bound for SK categories (default 3|G|)");
  app.add_option("--out", s.out, "Write output to a file");

  std::string group_ref = "S3", input, input2, subgroup_text, a_text, b_text;
  int class_index = -1, trials = 500, max_apex = 6, orbit = -1;
  bool force = false, presentation = false;

  std::function<void()> action;
  auto on = [&](CLI::App* cmd, std::function<void()> f) { cmd->callback([&action, f] { action = f; }); };

  // group
  auto* group = app.add_subcommand("group", "Group data")->require_subcommand(1);
  auto* g_info = group->add_subcommand("info", "Order, subgroup and class counts");
  auto* g_subs = group->add_subcommand("subgroups", "All subgroups with their classes");
  for (auto* c : {g_info, g_subs}) c->add_option("-g,--group", group_ref, "Fixture name or group JSON file");
  on(g_info, [&] {
    const GroupPtr g = group_arg(group_ref);
    const SubgroupLattice lat(g);
    std::vector<int> orders;
    for (int x = 0; x < g->order(); ++x) orders.push_back(g->element_order(x));
    emit(s, {{"name", g->name()}, {"order", g->order()}, {"subgroups", lat.subgroups().size()},
             {"classes", lat.class_count()}, {"element_orders", orders}});
  });
  on(g_subs, [&] {
    const SubgroupLattice lat(group_arg(group_ref));
    json rows = json::array();
    for (int i = 0; i < static_cast<int>(lat.subgroups().size()); ++i) rows.push_back(subgroup_row(lat, i));
    emit(s, {{"subgroups", rows}});
  });

  // marks
  auto* marks = app.add_subcommand("marks", "Table of marks");
  marks->add_option("-g,--group,-i,--input", group_ref, "Fixture name or group JSON file");
  on(marks, [&] {
    const BurnsideRing ring(group_arg(group_ref));
    json classes = json::array();
    for (int j = 0; j < ring.rank(); ++j) classes.push_back(ring.lattice().representative(j).elements);
    emit(s, {{"classes", classes}, {"marks", ring.table_of_marks()}});
  });

  // burnside
  auto* burnside = app.add_subcommand("burnside", "Burnside ring arithmetic")->require_subcommand(1);
  auto* b_mul = burnside->add_subcommand("mul", "Product of two elements in the orbit basis");
  b_mul->add_option("-g,--group", group_ref, "Fixture name or group JSON file");
  b_mul->add_option("-a", a_text, "First element, JSON list")->required();
  b_mul->add_option("-b", b_text, "Second element, JSON list")->required();
  on(b_mul, [&] {
    const BurnsideRing ring(group_arg(group_ref));
    auto parse = [&](const std::string& t) {
      try {
        return BurnsideElement{json::parse(t).get<std::vector<std::int64_t>>()};
      } catch (const json::exception&) {
        throw StructuralError("Burnside elements are JSON integer lists");
      }
    };
    const BurnsideElement p = ring.mul(parse(a_text), parse(b_text));
    emit(s, {{"product", p.coefficients}, {"marks", ring.marks(p)}});
  });

  // span
  auto* span = app.add_subcommand("span", "Spans of G-sets")->require_subcommand(1);
  auto* sp_compose = span->add_subcommand("compose", "Compose {first, second} by canonical pullback");
  sp_compose->add_option("-i,--input", input, "Document {group, first, second}")->required();
  on(sp_compose, [&] {
    const json doc = load(input);
    const GroupPtr g = io::read_group(doc.at("group"));
    const Span a = io::read_span(doc.at("first"), g), b = io::read_span(doc.at("second"), g);
    emit(s, {{"span", io::write_span(compose(a, b))}});
  });
  auto* sp_assoc = span->add_subcommand("assoc-test", "Strict associativity on random composable triples");
  sp_assoc->add_option("-g,--group", group_ref, "Fixture name or group JSON file");
  sp_assoc->add_option("--trials", trials, "Number of triples");
  sp_assoc->add_option("--max-apex", max_apex, "Apex size bound");
  on(sp_assoc, [&] {
    const AssociativityResult r = associativity_test(group_arg(group_ref), trials, max_apex, s.seed);
    json doc = {{"trials", r.trials}, {"failures", r.failures}, {"seed", s.seed}, {"passed", r.failures == 0}};
    if (r.failures) doc["witness"] = json::parse(r.witness);
    emit_checked(s, doc, r.failures == 0);
  });

  // mackey
  auto* mackey = app.add_subcommand("mackey", "Mackey functors")->require_subcommand(1);
  auto* m_validate = mackey->add_subcommand("validate", "Check the Mackey axioms");
  m_validate->add_option("-i,--input", input, "Mackey functor JSON")->required();
  on(m_validate, [&] {
    const ValidationReport r = validate(io::read_mackey(load(input)));
    emit_checked(s, io::write_report(r), r.passed());
  });
  auto* m_burnside = mackey->add_subcommand("burnside", "The Burnside Mackey functor");
  m_burnside->add_option("-g,--group", group_ref, "Fixture name or group JSON file");
  on(m_burnside, [&] { emit(s, io::write_mackey(burnside_mackey(group_arg(group_ref)))); });
  auto* m_compare = mackey->add_subcommand("compare", "Whether given components form an isomorphism");
  m_compare->add_option("-i,--input", input, "Source Mackey functor JSON")->required();
  m_compare->add_option("-j,--target", input2, "Target Mackey functor JSON")->required();
  m_compare->add_option("--components", b_text, "JSON file with per-level matrices (default identity)");
  on(m_compare, [&] {
    MackeyMorphism phi{io::read_mackey(load(input)), io::read_mackey(load(input2)), {}};
    if (!(phi.source.group() == phi.target.group())) throw StructuralError("functors over different groups");
    const int n = static_cast<int>(phi.source.levels.size());
    if (b_text.empty()) {
      for (int j = 0; j < n; ++j) {
        if (phi.source.dimension(j) != phi.target.dimension(j))
          throw StructuralError("identity components need equal level dimensions");
        phi.components.push_back(IntMatrix::identity(phi.source.dimension(j)));
      }
    } else {
      const json comps = load(b_text);
      if (!comps.contains("components") || comps.at("components").size() != static_cast<std::size_t>(n))
        throw StructuralError("expected one component per level");
      for (int j = 0; j < n; ++j)
        phi.components.push_back(
            io::read_matrix(comps.at("components")[j], phi.target.dimension(j), phi.source.dimension(j)));
    }
    const ValidationReport r = check_morphism(phi);
    const bool iso = r.passed() && is_isomorphism(phi);
    emit_checked(s, {{"morphism", io::write_report(r)}, {"isomorphism", iso}}, iso);
  });

  // squares
  auto* squares = app.add_subcommand("squares", "Categories with squares")->require_subcommand(1);
  auto* sq_check = squares->add_subcommand("check", "Check the category-with-squares axioms");
  sq_check->add_option("-i,--input", input, "Presentation JSON")->required();
  on(sq_check, [&] {
    const ValidationReport r = check_axioms(io::read_presentation(load(input)));
    emit_checked(s, io::write_report(r), r.passed());
  });
  auto* sq_k0 = squares->add_subcommand("k0", "K0 by Smith normal form");
  sq_k0->add_option("-i,--input", input, "Presentation JSON")->required();
  sq_k0->add_flag("--force", force, "Skip the axiom check");
  on(sq_k0, [&] {
    const SquaresPresentation p = io::read_presentation(load(input));
    if (!force) {
      const ValidationReport r = check_axioms(p);
      if (!r.passed()) emit_checked(s, {{"error", "axioms fail"}, {"report", io::write_report(r)}}, false);
    }
    emit(s, io::write_k0(k0(p, {.force = true}), p.objects));
  });

  // sk0
  auto* sk0 = app.add_subcommand("sk0", "Finite G-sets over a base as a category with squares")->require_subcommand(1);
  auto* sk_build = sk0->add_subcommand("build", "Truncated category over G/K_j (or a given base) and its K0");
  sk_build->add_option("-g,--group", group_ref, "Fixture name or group JSON file");
  sk_build->add_option("--orbit", orbit, "Base G/K_j for subgroup class j (default a point)");
  sk_build->add_option("--base", input, "Base G-set JSON");
  sk_build->add_flag("--presentation", presentation, "Include the explicit presentation");
  on(sk_build, [&] {
    const GroupPtr g = group_arg(group_ref);
    const SubgroupLattice lat(g);
    GSet base = GSet::trivial(g, 1);
    if (!input.empty()) {
      base = io::read_gset(load(input), g);
    } else if (orbit >= 0) {
      if (orbit >= lat.class_count()) throw StructuralError("--orbit out of range");
      base = coset_space(g, lat.representative(orbit));
    }
    SKOptions o = sk_options();
    o.presentation = presentation;
    const TruncatedSK cat = build_truncated(base, trunc_or(s, 3 * g->order()), o);
    const SKK0 k = sk_k0(cat);
    json types = json::array();
    for (int t = 0; t < cat.types->type_count(); ++t)
      types.push_back({{"orbit", cat.types->type(t).orbit},
                       {"subgroup", cat.types->type(t).subgroup.elements},
                       {"size", cat.types->type(t).size}});
    json doc = {{"base", io::write_gset(base)},
                {"bound", cat.bound},
                {"objects", cat.object_count()},
                {"types", types},
                {"k0", io::write_group_summary(k.k0.group)},
                {"type_classes", k.type_classes}};
    if (cat.presentation) {
      doc["presentation"] = io::write_presentation(*cat.presentation);
      doc["axioms"] = io::write_report(check_axioms(*cat.presentation));
    }
    emit(s, doc);
  });
  auto* sk_mackey = sk0->add_subcommand("mackey", "K0 Mackey functor against the Burnside Mackey functor");
  sk_mackey->add_option("-g,--group", group_ref, "Fixture name or group JSON file");
  on(sk_mackey, [&] {
    const GroupPtr g = group_arg(group_ref);
    const SKMackey m = k0_mackey(g, trunc_or(s, 3 * g->order()));
    const ValidationReport nat = check_morphism(m.comparison);
    const ValidationReport val = validate(m.functor);
    emit_checked(s,
                 {{"bound", trunc_or(s, 3 * g->order())},
                  {"ranks", m.ranks},
                  {"ranks_check", m.ranks_check},
                  {"validate", io::write_report(val)},
                  {"naturality", io::write_report(nat)},
                  {"isomorphism", m.isomorphism}},
                 m.isomorphism && val.passed());
  });
  auto* sk_phi = sk0->add_subcommand("phi-psi", "Fiber/induction equivalence over G/H");
  sk_phi->add_option("-g,--group", group_ref, "Fixture name or group JSON file");
  sk_phi->add_option("--subgroup", subgroup_text, "H as a JSON list of element indices");
  sk_phi->add_option("--class", class_index, "H as a subgroup class representative (default all)");
  on(sk_phi, [&] {
    const GroupPtr g = group_arg(group_ref);
    const SubgroupLattice lat(g);
    std::vector<Subgroup> hs;
    if (subgroup_text.empty() && class_index < 0) {
      for (int j = 0; j < lat.class_count(); ++j) hs.push_back(lat.representative(j));
    } else {
      hs.push_back(subgroup_arg(subgroup_text, lat, class_index));
    }
    json rows = json::array();
    bool ok = true;
    for (const Subgroup& h : hs) {
      const ValidationReport r = phi_psi_check(g, h, trunc_or(s, 3 * g->order()));
      ok = ok && r.passed();
      json failed = json::array();
      for (const auto& a : r.axioms)
        if (!a.passed) failed.push_back({{"axiom", a.axiom}, {"witness", json::parse(a.witness)}});
      rows.push_back({{"subgroup", h.elements}, {"passed", r.passed()}, {"failed", failed}});
    }
    emit_checked(s, {{"bound", trunc_or(s, 3 * g->order())}, {"checks", rows}, {"passed", ok}}, ok);
  });
  auto* sk_beck = sk0->add_subcommand("beck", "Beck-Chevalley on all orbit pullback squares");
  sk_beck->add_option("-g,--group", group_ref, "Fixture name or group JSON file");
  on(sk_beck, [&] {
    const GroupPtr g = group_arg(group_ref);
    const int bound = trunc_or(s, 2 * g->order());
    const auto sq = orbit_pullback_squares(g);
    int failures = 0;
    json witness;
    for (std::size_t i = 0; i < sq.size(); ++i) {
      const ValidationReport r = beck_chevalley_check(sq[i], bound);
      if (!r.passed() && failures++ == 0) witness = {{"square", i}, {"report", io::write_report(r)}};
    }
    json doc = {{"bound", bound}, {"squares", sq.size()}, {"failures", failures}, {"passed", failures == 0}};
    if (failures) doc["witness"] = witness;
    emit_checked(s, doc, failures == 0);
  });

  // euler
  auto* euler = app.add_subcommand("euler", "Equivariant Euler characteristics")->require_subcommand(1);
  auto* e_chi = euler->add_subcommand("chi", "chi_G in the orbit basis, with its marks");
  auto* e_restrict = euler->add_subcommand("restrict", "Restrict a complex to a subgroup");
  auto* e_fixed = euler->add_subcommand("fixed", "Euler characteristic of the K-fixed cells");
  for (auto* c : {e_chi, e_restrict, e_fixed}) c->add_option("-i,--input", input, "G-CW complex JSON")->required();
  for (auto* c : {e_restrict, e_fixed}) {
    c->add_option("--subgroup", subgroup_text, "Subgroup as a JSON list of element indices");
    c->add_option("--class", class_index, "Subgroup class representative");
  }
  on(e_chi, [&] {
    const GCWComplex m = io::read_complex(load(input));
    const BurnsideRing ring(m.group);
    const BurnsideElement chi = euler_characteristic(m, ring);
    emit(s, {{"chi", chi.coefficients}, {"marks", ring.marks(chi)}});
  });
  on(e_restrict, [&] {
    const GCWComplex m = io::read_complex(load(input));
    const SubgroupLattice lat(m.group);
    const GCWComplex r = restrict_complex(m, subgroup_arg(subgroup_text, lat, class_index));
    emit(s, {{"complex", io::write_complex(r)}, {"chi", euler_characteristic(r).coefficients}});
  });
  on(e_fixed, [&] {
    const GCWComplex m = io::read_complex(load(input));
    const SubgroupLattice lat(m.group);
    emit(s, {{"fixed_euler", fixed_euler(m, subgroup_arg(subgroup_text, lat, class_index))}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (action) action();
    return 0;
  } catch (const Failed&) {
    return 1;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cout << io::tagged({{"error", e.what()}, {"witness", json::parse(e.witness())}}).dump() << "\n";
    return 1;
  } catch (const TruncationError& e) {
    std::cout << io::tagged({{"error", e.what()}, {"required_bound", e.required_bound()}}).dump() << "\n";
    return 1;
  } catch (const StabilizationError& e) {
    std::cout << io::tagged({{"error", e.what()}, {"rank_low", e.rank_low()}, {"rank_high", e.rank_high()}}).dump()
              << "\n";
    return 1;
  } catch (const Error& e) {
    std::cout << io::tagged({{"error", e.what()}}).dump() << "\n";
    return 1;
  }
}
