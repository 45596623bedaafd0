#include "eqsk/io.hpp"

#include "eqsk/error.hpp"

namespace eqsk::io {

namespace {

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw StructuralError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

template <class T>
T as(const json& v, const char* what) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw StructuralError(std::string("field \"") + what + "\" has the wrong type");
  }
}

GroupPtr group_of(const json& doc, const GroupPtr& fallback) {
  if (doc.is_object() && doc.contains("group")) return read_group(doc.at("group"));
  if (!fallback) throw StructuralError("missing field \"group\"");
  return fallback;
}

}  // namespace

void check_schema(const json& doc) {
  if (doc.is_object() && doc.contains("schema") && doc.at("schema") != kSchema)
    throw StructuralError("unsupported schema " + doc.at("schema").dump());
}

json tagged(json doc) {
  json out = {{"schema", kSchema}};
  for (auto& [k, v] : doc.items()) out[k] = std::move(v);
  return out;
}

GroupPtr read_group(const json& ref) {
  if (ref.is_string()) {
    try {
      return std::make_shared<const FiniteGroup>(fixtures::by_name(ref.get<std::string>()));
    } catch (const PreconditionError& e) {
      throw StructuralError(e.what());
    }
  }
  check_schema(ref);
  if (ref.is_object() && ref.contains("table")) {
    auto table = as<std::vector<std::vector<int>>>(ref.at("table"), "table");
    if (ref.contains("order") && as<int>(ref.at("order"), "order") != static_cast<int>(table.size()))
      throw StructuralError("group order does not match the table");
    std::vector<std::string> labels;
    if (ref.contains("labels")) labels = as<std::vector<std::string>>(ref.at("labels"), "labels");
    const std::string name = ref.contains("name") ? as<std::string>(ref.at("name"), "name") : std::string();
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(name, table, labels));
  }
  if (ref.is_object() && ref.contains("generators")) {
    const int degree = as<int>(field(ref, "degree"), "degree");
    auto gens = as<std::vector<Permutation>>(ref.at("generators"), "generators");
    const std::string name = ref.contains("name") ? as<std::string>(ref.at("name"), "name") : std::string();
    try {
      return std::make_shared<const FiniteGroup>(from_generators(degree, gens, name));
    } catch (const PreconditionError& e) {
      throw StructuralError(e.what());
    }
  }
  throw StructuralError("group must be a fixture name, a table or generators");
}

json write_group(const FiniteGroup& g) {
  return json{{"name", g.name()}, {"order", g.order()}, {"table", g.table()}};
}

GSet read_gset(const json& doc, const GroupPtr& group) {
  check_schema(doc);
  const GroupPtr g = group_of(doc, group);
  const int size = as<int>(field(doc, "size"), "size");
  auto action = as<std::vector<std::vector<int>>>(field(doc, "action"), "action");
  if (size < 0) throw StructuralError("negative G-set size");
  return GSet(g, size, action);
}

json write_gset(const GSet& x) {
  std::vector<std::vector<int>> action;
  for (int g = 0; g < x.group().order(); ++g) {
    auto p = x.permutation(g);
    action.emplace_back(p.begin(), p.end());
  }
  return json{{"size", x.size()}, {"action", action}};
}

GMap read_gmap(const json& doc, const GroupPtr& group) {
  check_schema(doc);
  const GroupPtr g = group_of(doc, group);
  return GMap(read_gset(field(doc, "source"), g), read_gset(field(doc, "target"), g),
              as<std::vector<int>>(field(doc, "values"), "values"));
}

json write_gmap(const GMap& f) {
  return json{{"source", write_gset(f.source())}, {"target", write_gset(f.target())}, {"values", f.values()}};
}

Span read_span(const json& doc, const GroupPtr& group) {
  check_schema(doc);
  const GroupPtr g = group_of(doc, group);
  return Span(read_gmap(field(doc, "left"), g), read_gmap(field(doc, "right"), g));
}

json write_span(const Span& s) { return json{{"left", write_gmap(s.left)}, {"right", write_gmap(s.right)}}; }

json write_subgroup(const Subgroup& h) { return h.elements; }

Subgroup read_subgroup(const json& doc, const FiniteGroup& g) {
  auto elements = as<std::vector<int>>(doc, "subgroup");
  for (int x : elements)
    if (x < 0 || x >= g.order()) throw StructuralError("subgroup element out of range");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!is_subgroup(g, elements)) throw StructuralError("element list is not a subgroup");
  return make_subgroup(g, elements);
}

json write_matrix(const IntMatrix& m) { return m.to_rows(); }

IntMatrix read_matrix(const json& doc, int rows, int cols) {
  auto data = as<std::vector<std::vector<std::int64_t>>>(doc, "matrix");
  if (static_cast<int>(data.size()) != rows) throw StructuralError("matrix has the wrong number of rows");
  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(data[r].size()) != cols) throw StructuralError("matrix has the wrong number of columns");
    for (int c = 0; c < cols; ++c) m(r, c) = data[r][c];
  }
  return m;
}

json write_group_summary(const FgAbelianGroup& a) { return json{{"free_rank", a.free_rank}, {"torsion", a.torsion}}; }

MackeyFunctor read_mackey(const json& doc) {
  check_schema(doc);
  MackeyFunctor m;
  m.lattice = std::make_shared<const SubgroupLattice>(read_group(field(doc, "group")));
  const SubgroupLattice& lat = *m.lattice;
  const int n = lat.class_count();
  const auto& levels = field(doc, "levels");
  if (!levels.is_array() || static_cast<int>(levels.size()) != n)
    throw StructuralError("expected one level per subgroup class (" + std::to_string(n) + ")");
  m.levels.resize(n);
  std::vector<bool> seen(n, false);
  for (const auto& l : levels) {
    const int c = as<int>(field(l, "class"), "class");
    if (c < 0 || c >= n || seen[c]) throw StructuralError("bad or repeated level class");
    seen[c] = true;
    FgAbelianGroup a{as<int>(field(l, "free_rank"), "free_rank"),
                     l.contains("torsion") ? as<std::vector<std::int64_t>>(l.at("torsion"), "torsion")
                                           : std::vector<std::int64_t>{}};
    try {
      a.validate();
    } catch (const Error& e) {
      throw StructuralError(e.what());
    }
    m.levels[c] = a;
  }
  auto read_maps = [&](const char* key, bool restriction) {
    std::map<std::pair<int, int>, IntMatrix> out;
    if (!doc.contains(key)) return out;
    for (const auto& e : doc.at(key)) {
      const int i = as<int>(field(e, "class"), "class");
      if (i < 0 || i >= n) throw StructuralError("class index out of range");
      const int k = lat.index_of(read_subgroup(field(e, "subgroup"), lat.group()));
      const int j = lat.class_of(k);
      const int rows = restriction ? m.dimension(j) : m.dimension(i);
      const int cols = restriction ? m.dimension(i) : m.dimension(j);
      out[{i, k}] = read_matrix(field(e, "matrix"), rows, cols);
    }
    return out;
  };
  m.res = read_maps("res", true);
  m.tr = read_maps("tr", false);
  m.con.resize(n);
  if (doc.contains("con"))
    for (const auto& e : doc.at("con")) {
      const int j = as<int>(field(e, "class"), "class");
      if (j < 0 || j >= n) throw StructuralError("class index out of range");
      const int w = as<int>(field(e, "element"), "element");
      m.con[j][w] = read_matrix(field(e, "matrix"), m.dimension(j), m.dimension(j));
    }
  check_structure(m);
  return m;
}

json write_mackey(const MackeyFunctor& m) {
  const SubgroupLattice& lat = *m.lattice;
  json levels = json::array(), res = json::array(), tr = json::array(), con = json::array();
  for (int j = 0; j < static_cast<int>(m.levels.size()); ++j)
    levels.push_back({{"class", j}, {"free_rank", m.levels[j].free_rank}, {"torsion", m.levels[j].torsion}});
  for (const auto& [key, mat] : m.res)
    res.push_back({{"class", key.first}, {"subgroup", write_subgroup(lat.subgroups()[key.second])},
                   {"matrix", write_matrix(mat)}});
  for (const auto& [key, mat] : m.tr)
    tr.push_back({{"class", key.first}, {"subgroup", write_subgroup(lat.subgroups()[key.second])},
                  {"matrix", write_matrix(mat)}});
  for (int j = 0; j < static_cast<int>(m.con.size()); ++j)
    for (const auto& [w, mat] : m.con[j]) con.push_back({{"class", j}, {"element", w}, {"matrix", write_matrix(mat)}});
  return json{{"group", write_group(lat.group())}, {"levels", levels}, {"res", res}, {"tr", tr}, {"con", con}};
}

SquaresPresentation read_presentation(const json& doc) {
  check_schema(doc);
  SquaresPresentation p;
  const auto& objects = field(doc, "objects");
  if (objects.is_number_integer()) {
    for (int i = 0; i < objects.get<int>(); ++i) p.objects.push_back(std::to_string(i));
  } else {
    p.objects = as<std::vector<std::string>>(objects, "objects");
  }
  p.distinguished = as<int>(field(doc, "distinguished"), "distinguished");
  for (const auto& f : field(doc, "morphisms"))
    p.morphisms.push_back(Morphism{as<int>(field(f, "source"), "source"), as<int>(field(f, "target"), "target"),
                                   f.value("horizontal", false), f.value("vertical", false), f.value("iso", false)});
  p.comp = as<std::vector<std::array<int, 3>>>(field(doc, "comp"), "comp");
  if (doc.contains("coproducts"))
    for (const auto& c : doc.at("coproducts"))
      p.coproducts.push_back(CoproductEntry{as<int>(field(c, "left"), "left"), as<int>(field(c, "right"), "right"),
                                            as<int>(field(c, "object"), "object"),
                                            as<int>(field(c, "in_left"), "in_left"),
                                            as<int>(field(c, "in_right"), "in_right")});
  if (doc.contains("squares"))
    for (const auto& s : as<std::vector<std::array<int, 8>>>(doc.at("squares"), "squares"))
      p.squares.push_back(Square{s[0], s[1], s[2], s[3], s[4], s[5], s[6], s[7]});
  check_structure(p);
  return p;
}

json write_presentation(const SquaresPresentation& p) {
  json morphisms = json::array(), coproducts = json::array(), squares = json::array();
  for (const auto& f : p.morphisms)
    morphisms.push_back({{"source", f.source}, {"target", f.target}, {"horizontal", f.horizontal},
                         {"vertical", f.vertical}, {"iso", f.iso}});
  for (const auto& c : p.coproducts)
    coproducts.push_back({{"left", c.left}, {"right", c.right}, {"object", c.object}, {"in_left", c.in_left},
                          {"in_right", c.in_right}});
  for (const auto& s : p.squares) squares.push_back({s.a, s.b, s.c, s.d, s.top, s.left, s.right, s.bottom});
  return json{{"objects", p.objects}, {"distinguished", p.distinguished}, {"morphisms", morphisms},
              {"comp", p.comp},       {"coproducts", coproducts},         {"squares", squares}};
}

json write_k0(const K0Result& k, const std::vector<std::string>& names) {
  json classes = json::object();
  for (std::size_t i = 0; i < k.classes.size(); ++i)
    classes[i < names.size() ? names[i] : std::to_string(i)] = k.classes[i];
  return json{{"free_rank", k.group.free_rank}, {"torsion", k.group.torsion}, {"classes", classes}};
}

GCWComplex read_complex(const json& doc) {
  check_schema(doc);
  GroupPtr g = read_group(field(doc, "group"));
  std::vector<Cell> cells;
  for (const auto& c : field(doc, "cells"))
    cells.push_back(Cell{as<int>(field(c, "dim"), "dim"), read_subgroup(field(c, "stabilizer"), *g)});
  return make_complex(g, std::move(cells));
}

json write_complex(const GCWComplex& m) {
  json cells = json::array();
  for (const auto& c : m.cells) cells.push_back({{"dim", c.dim}, {"stabilizer", c.stabilizer.elements}});
  return json{{"group", write_group(*m.group)}, {"cells", cells}};
}

json write_burnside(const BurnsideElement& a) { return a.coefficients; }

json write_report(const ValidationReport& r) {
  json axioms = json::array();
  for (const auto& a : r.axioms) {
    json e = {{"axiom", a.axiom}, {"status", a.passed ? "pass" : "fail"}};
    if (!a.passed) e["witness"] = json::parse(a.witness.empty() ? "null" : a.witness);
    axioms.push_back(std::move(e));
  }
  return json{{"passed", r.passed()}, {"axioms", axioms}};
}

}  // namespace eqsk::io
