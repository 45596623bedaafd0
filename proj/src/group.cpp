#include "eqsk/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <sstream>

#include "eqsk/error.hpp"

namespace eqsk {

namespace {

std::string cycle_label(const Permutation& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::ostringstream out;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == static_cast<int>(start)) continue;
    out << '(';
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out << ' ';
      out << x;
      first = false;
      x = static_cast<std::size_t>(perm[x]);
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "e" : s;
}

bool is_permutation(const Permutation& p, int degree) {
  if (static_cast<int>(p.size()) != degree) return false;
  std::vector<bool> hit(static_cast<std::size_t>(degree), false);
  for (int v : p) {
    if (v < 0 || v >= degree || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, const std::vector<std::vector<int>>& table,
                                    std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw StructuralError("group table is empty");
  FiniteGroup g;
  g.name_ = std::move(name);
  g.order_ = n;
  g.table_.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      throw StructuralError("group table row " + std::to_string(a) + " has wrong length");
    for (int v : table[a]) {
      if (v < 0 || v >= n) throw StructuralError("group table entry out of range");
      g.table_.push_back(v);
    }
  }
  // Rows and columns are permutations; identity is 0.
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      int r = g.mul(a, b), c = g.mul(b, a);
      if (row[r] || col[c])
        throw StructuralError("group table row/column " + std::to_string(a) +
                              " is not a permutation");
      row[r] = col[c] = true;
    }
    if (g.mul(0, a) != a || g.mul(a, 0) != a)
      throw StructuralError("element 0 is not a two-sided identity");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw StructuralError("group table is not associative at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == 0) g.inverse_[a] = b;
  if (labels.empty()) {
    labels.reserve(n);
    for (int a = 0; a < n; ++a) labels.push_back(a == 0 ? "e" : "g" + std::to_string(a));
  } else if (static_cast<int>(labels.size()) != n) {
    throw StructuralError("group label count does not match order");
  }
  g.labels_ = std::move(labels);
  return g;
}

int FiniteGroup::element_order(int g) const {
  int k = 1;
  for (int x = g; x != 0; x = mul(x, g)) ++k;
  return k;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> out(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) out[a][b] = mul(a, b);
  return out;
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elements.begin(), elements.end(), other.elements.begin(),
                       other.elements.end());
}

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements < b.elements;
}

FiniteGroup from_generators(int degree, const std::vector<Permutation>& generators,
                            std::string name, GeneratorOptions options) {
  if (degree <= 0) throw PreconditionError("permutation degree must be positive");
  for (const auto& gen : generators)
    if (!is_permutation(gen, degree))
      throw PreconditionError("generator is not a permutation of the given degree");

  Permutation identity(degree);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<Permutation> elements{identity};
  std::map<Permutation, int> index{{identity, 0}};
  std::vector<Permutation> layer{identity};
  while (!layer.empty()) {
    std::set<Permutation> next;
    for (const auto& p : layer)
      for (const auto& gen : generators) {
        Permutation q(degree);
        for (int x = 0; x < degree; ++x) q[x] = p[gen[x]];
        if (!index.contains(q)) next.insert(q);
      }
    layer.assign(next.begin(), next.end());
    for (const auto& q : layer) {
      index.emplace(q, static_cast<int>(elements.size()));
      elements.push_back(q);
    }
    if (elements.size() > options.size_cap)
      throw SizeCapError("generated group exceeds size cap " + std::to_string(options.size_cap));
  }

  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  Permutation prod(degree);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int x = 0; x < degree; ++x) prod[x] = elements[a][elements[b][x]];
      table[a][b] = index.at(prod);
    }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& p : elements) labels.push_back(cycle_label(p));
  return FiniteGroup::from_table(std::move(name), table, std::move(labels));
}

bool is_subgroup(const FiniteGroup& group, const std::vector<int>& elements) {
  if (elements.empty()) return false;
  std::vector<bool> in(group.order(), false);
  for (int g : elements) {
    if (g < 0 || g >= group.order()) return false;
    in[g] = true;
  }
  if (!in[0]) return false;
  for (int a : elements) {
    if (!in[group.inv(a)]) return false;
    for (int b : elements)
      if (!in[group.mul(a, b)]) return false;
  }
  return true;
}

Subgroup make_subgroup(const FiniteGroup& group, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!is_subgroup(group, elements))
    throw PreconditionError("element set is not a subgroup of " + group.name());
  return Subgroup{std::move(elements)};
}

Subgroup generated_subgroup(const FiniteGroup& group, std::span<const int> generators) {
  std::vector<bool> in(group.order(), false);
  std::vector<int> found{0};
  in[0] = true;
  for (std::size_t i = 0; i < found.size(); ++i)
    for (int gen : generators) {
      int x = group.mul(found[i], gen);
      if (!in[x]) {
        in[x] = true;
        found.push_back(x);
      }
    }
  std::sort(found.begin(), found.end());
  return Subgroup{std::move(found)};
}

Subgroup trivial_subgroup(const FiniteGroup&) { return Subgroup{{0}}; }

Subgroup whole_group(const FiniteGroup& group) {
  std::vector<int> all(group.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup{std::move(all)};
}

Subgroup conjugate(const FiniteGroup& group, int g, const Subgroup& subgroup) {
  std::vector<int> out;
  out.reserve(subgroup.elements.size());
  for (int h : subgroup.elements) out.push_back(group.conj(g, h));
  std::sort(out.begin(), out.end());
  return Subgroup{std::move(out)};
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<int> out;
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(),
                        b.elements.end(), std::back_inserter(out));
  return Subgroup{std::move(out)};
}

bool are_conjugate(const FiniteGroup& group, const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return false;
  for (int g = 0; g < group.order(); ++g)
    if (conjugate(group, g, a) == b) return true;
  return false;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& group) {
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> cyclic;
  for (int g = 0; g < group.order(); ++g) {
    std::array<int, 1> gen{g};
    Subgroup c = generated_subgroup(group, gen);
    if (seen.insert(c.elements).second) cyclic.push_back(c);
  }
  std::vector<Subgroup> found = cyclic;
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& c : cyclic) {
      if (found[i].contains(c)) continue;
      std::vector<int> gens = found[i].elements;
      gens.insert(gens.end(), c.elements.begin(), c.elements.end());
      Subgroup join = generated_subgroup(group, gens);
      if (seen.insert(join.elements).second) found.push_back(std::move(join));
    }
  }
  std::sort(found.begin(), found.end(), subgroup_less);
  return found;
}

std::vector<Subgroup> all_subgroups_exhaustive(const FiniteGroup& group) {
  const int n = group.order();
  if (n > 16) throw PreconditionError("exhaustive subgroup enumeration requires order <= 16");
  std::vector<Subgroup> out;
  // Subsets of the non-identity elements; identity always included.
  const unsigned long long limit = 1ULL << (n - 1);
  for (unsigned long long mask = 0; mask < limit; ++mask) {
    std::vector<int> elems{0};
    for (int b = 0; b < n - 1; ++b)
      if (mask & (1ULL << b)) elems.push_back(b + 1);
    bool closed = true;
    std::vector<bool> in(n, false);
    for (int g : elems) in[g] = true;
    for (std::size_t i = 0; closed && i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j)
        if (!in[group.mul(elems[i], elems[j])]) {
          closed = false;
          break;
        }
    if (closed) out.push_back(Subgroup{std::move(elems)});
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& group) {
  const auto subs = all_subgroups(group);
  std::vector<bool> assigned(subs.size(), false);
  std::map<std::vector<int>, std::size_t> where;
  for (std::size_t i = 0; i < subs.size(); ++i) where.emplace(subs[i].elements, i);
  std::vector<SubgroupClass> classes;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (assigned[i]) continue;
    std::set<std::vector<int>> conj;
    for (int g = 0; g < group.order(); ++g) conj.insert(conjugate(group, g, subs[i]).elements);
    SubgroupClass cls;
    for (const auto& elems : conj) {
      assigned[where.at(elems)] = true;
      cls.members.push_back(Subgroup{elems});
    }
    std::sort(cls.members.begin(), cls.members.end(), subgroup_less);
    cls.representative = cls.members.front();
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    return subgroup_less(a.representative, b.representative);
  });
  return classes;
}

CosetTable coset_table(const FiniteGroup& group, const Subgroup& subgroup) {
  CosetTable t;
  t.coset_of.assign(group.order(), -1);
  for (int g = 0; g < group.order(); ++g) {
    if (t.coset_of[g] >= 0) continue;
    const int idx = t.size();
    t.representatives.push_back(g);
    for (int h : subgroup.elements) t.coset_of[group.mul(g, h)] = idx;
  }
  return t;
}

std::vector<int> cosets(const FiniteGroup& group, const Subgroup& subgroup) {
  return coset_table(group, subgroup).representatives;
}

std::vector<int> double_cosets_within(const FiniteGroup& group, const Subgroup& ambient,
                                      const Subgroup& left, const Subgroup& right) {
  std::vector<bool> seen(group.order(), false);
  std::vector<int> reps;
  for (int g : ambient.elements) {
    if (seen[g]) continue;
    reps.push_back(g);
    for (int k : left.elements)
      for (int h : right.elements) seen[group.mul(group.mul(k, g), h)] = true;
  }
  return reps;
}

std::vector<int> double_cosets(const FiniteGroup& group, const Subgroup& left,
                               const Subgroup& right) {
  return double_cosets_within(group, whole_group(group), left, right);
}

Subgroup normalizer(const FiniteGroup& group, const Subgroup& subgroup) {
  std::vector<int> out;
  for (int g = 0; g < group.order(); ++g)
    if (conjugate(group, g, subgroup) == subgroup) out.push_back(g);
  return Subgroup{std::move(out)};
}

Subgroup SubgroupGroup::to_parent_subgroup(const Subgroup& local) const {
  std::vector<int> out;
  out.reserve(local.elements.size());
  for (int x : local.elements) out.push_back(to_parent[x]);
  std::sort(out.begin(), out.end());
  return Subgroup{std::move(out)};
}

Subgroup SubgroupGroup::from_parent_subgroup(const Subgroup& parent) const {
  std::vector<int> out;
  out.reserve(parent.elements.size());
  for (int x : parent.elements) {
    if (from_parent[x] < 0) throw PreconditionError("subgroup is not contained in the ambient subgroup");
    out.push_back(from_parent[x]);
  }
  std::sort(out.begin(), out.end());
  return Subgroup{std::move(out)};
}

SubgroupGroup subgroup_as_group(const FiniteGroup& group, const Subgroup& subgroup) {
  SubgroupGroup sg;
  sg.to_parent = subgroup.elements;
  sg.from_parent.assign(group.order(), -1);
  for (std::size_t i = 0; i < sg.to_parent.size(); ++i)
    sg.from_parent[sg.to_parent[i]] = static_cast<int>(i);
  const int n = subgroup.order();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(group.labels()[sg.to_parent[a]]);
    for (int b = 0; b < n; ++b) {
      int p = sg.from_parent[group.mul(sg.to_parent[a], sg.to_parent[b])];
      if (p < 0) throw PreconditionError("element set is not closed under multiplication");
      table[a][b] = p;
    }
  }
  std::string name = group.name() + "[";
  for (std::size_t i = 0; i < subgroup.elements.size(); ++i)
    name += (i ? "," : "") + std::to_string(subgroup.elements[i]);
  name += "]";
  sg.group = std::make_shared<const FiniteGroup>(
      FiniteGroup::from_table(std::move(name), table, std::move(labels)));
  return sg;
}

SubgroupLattice::SubgroupLattice(GroupPtr group) : group_(std::move(group)) {
  classes_ = subgroup_classes(*group_);
  for (const auto& cls : classes_)
    for (const auto& m : cls.members) subgroups_.push_back(m);
  std::sort(subgroups_.begin(), subgroups_.end(), subgroup_less);
  for (std::size_t i = 0; i < subgroups_.size(); ++i)
    index_.emplace(subgroups_[i].elements, static_cast<int>(i));
  class_of_.assign(subgroups_.size(), -1);
  conjugator_.assign(subgroups_.size(), -1);
  rep_index_.assign(classes_.size(), -1);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    rep_index_[c] = index_.at(classes_[c].representative.elements);
    for (const auto& m : classes_[c].members) class_of_[index_.at(m.elements)] = static_cast<int>(c);
  }
  for (std::size_t s = 0; s < subgroups_.size(); ++s) {
    const Subgroup& rep = classes_[class_of_[s]].representative;
    for (int t = 0; t < group_->order(); ++t)
      if (conjugate(*group_, t, rep) == subgroups_[s]) {
        conjugator_[s] = t;
        break;
      }
  }
}

int SubgroupLattice::index_of(const Subgroup& subgroup) const {
  auto it = index_.find(subgroup.elements);
  if (it == index_.end()) throw PreconditionError("not a subgroup of " + group_->name());
  return it->second;
}

std::vector<int> SubgroupLattice::subgroups_of(int index) const {
  std::vector<int> out;
  for (std::size_t s = 0; s < subgroups_.size(); ++s)
    if (subgroups_[index].contains(subgroups_[s])) out.push_back(static_cast<int>(s));
  return out;
}

namespace fixtures {

FiniteGroup trivial() { return from_generators(1, {}, "e"); }

FiniteGroup cyclic(int n) {
  Permutation r(n);
  for (int i = 0; i < n; ++i) r[i] = (i + 1) % n;
  return from_generators(n, {r}, "C" + std::to_string(n));
}

FiniteGroup klein_four() {
  return from_generators(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}, "C2xC2");
}

FiniteGroup symmetric3() { return from_generators(3, {{1, 2, 0}, {1, 0, 2}}, "S3"); }

FiniteGroup dihedral(int n) {
  Permutation r(n), s(n);
  for (int i = 0; i < n; ++i) {
    r[i] = (i + 1) % n;
    s[i] = (n - i) % n;
  }
  return from_generators(n, {r, s}, "D" + std::to_string(n));
}

FiniteGroup quaternion8() {
  // Elements ±1, ±i, ±j, ±k encoded as sign*4 + unit, unit in {1, i, j, k}.
  static constexpr int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  auto mul = [](int a, int b) {
    int ua = a % 4, ub = b % 4;
    int sign = (a / 4 + b / 4 + unit_sign[ua][ub]) % 2;
    return sign * 4 + unit_mul[ua][ub];
  };
  Permutation left_i(8), left_j(8);
  for (int x = 0; x < 8; ++x) {
    left_i[x] = mul(1, x);
    left_j[x] = mul(2, x);
  }
  return from_generators(8, {left_i, left_j}, "Q8");
}

FiniteGroup alternating4() { return from_generators(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}, "A4"); }

std::vector<FiniteGroup> acceptance_groups() {
  return {cyclic(2), cyclic(3),    cyclic(4),   klein_four(),   symmetric3(),
          cyclic(6), dihedral(4), quaternion8(), alternating4(), dihedral(6)};
}

FiniteGroup by_name(const std::string& name) {
  if (name == "e" || name == "C1") return trivial();
  if (name == "C2xC2" || name == "V4") return klein_four();
  if (name == "S3") return symmetric3();
  if (name == "Q8") return quaternion8();
  if (name == "A4") return alternating4();
  if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'D')) {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (const std::exception&) {
      n = 0;
    }
    if (n >= 1 && name[0] == 'C') return cyclic(n);
    if (n >= 2 && name[0] == 'D') {
      FiniteGroup g = dihedral(n);
      return g;
    }
  }
  throw PreconditionError("unknown fixture group '" + name + "'");
}

}  // namespace fixtures

}  // namespace eqsk
