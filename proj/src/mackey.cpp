#include "eqsk/mackey.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "eqsk/error.hpp"
#include "recorder.hpp"

namespace eqsk {

namespace {

using json = nlohmann::json;

json matrix_json(const IntMatrix& m) { return m.to_rows(); }

int reduce_to_transversal(const FiniteGroup& g, const Subgroup& k, int n) {
  int best = g.order();
  for (int x : k.elements) best = std::min(best, g.mul(n, x));
  return best;
}

bool well_defined(const IntMatrix& f, const FgAbelianGroup& src, const FgAbelianGroup& tgt) {
  for (std::size_t t = 0; t < src.torsion.size(); ++t) {
    const int c = src.free_rank + static_cast<int>(t);
    IntMatrix col(f.rows(), 1);
    for (int r = 0; r < f.rows(); ++r) col(r, 0) = f(r, c) * src.torsion[t];
    if (!equal_in(tgt, col, IntMatrix(f.rows(), 1))) return false;
  }
  return true;
}

using detail::Recorder;

IntMatrix identity_matrix(int n) { return IntMatrix::identity(n); }

}  // namespace

std::vector<int> weyl_transversal(const SubgroupLattice& lattice, int class_index) {
  const FiniteGroup& g = lattice.group();
  const Subgroup& k = lattice.representative(class_index);
  std::vector<int> out;
  for (int n : normalizer(g, k).elements)
    if (reduce_to_transversal(g, k, n) == n) out.push_back(n);
  return out;
}

bool equal_in(const FgAbelianGroup& target, const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) {
      const std::int64_t d = a(r, c) - b(r, c);
      if (r < target.free_rank ? d != 0 : d % target.torsion[r - target.free_rank] != 0) return false;
    }
  return true;
}

IntMatrix MackeyFunctor::conj(int g, int k) const {
  const FiniteGroup& grp = group();
  const int j = lattice->class_of(k);
  const int t = lattice->conjugator(k);
  const int k2 = lattice->index_of(conjugate(grp, g, lattice->subgroups()[k]));
  const int t2 = lattice->conjugator(k2);
  const int n = grp.mul(grp.mul(grp.inv(t2), g), t);
  const int w = reduce_to_transversal(grp, lattice->representative(j), n);
  auto it = con.at(j).find(w);
  if (it == con.at(j).end()) throw StructuralError("missing conjugation matrix");
  return it->second;
}

IntMatrix MackeyFunctor::restriction(int h, int k) const {
  const FiniteGroup& grp = group();
  const int i = lattice->class_of(h);
  const int th = lattice->conjugator(h);
  const int k0 = lattice->index_of(conjugate(grp, grp.inv(th), lattice->subgroups()[k]));
  return conj(th, k0) * res.at({i, k0});
}

IntMatrix MackeyFunctor::transfer(int k, int h) const {
  const FiniteGroup& grp = group();
  const int i = lattice->class_of(h);
  const int th = lattice->conjugator(h);
  const int k0 = lattice->index_of(conjugate(grp, grp.inv(th), lattice->subgroups()[k]));
  return tr.at({i, k0}) * conj(grp.inv(th), k);
}

MackeyFunctor zero_mackey(std::shared_ptr<const SubgroupLattice> lattice) {
  MackeyFunctor m;
  m.lattice = std::move(lattice);
  const int n = m.lattice->class_count();
  m.levels.assign(n, FgAbelianGroup{});
  m.con.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int k : m.lattice->subgroups_of(m.lattice->representative_index(i))) {
      m.res[{i, k}] = IntMatrix(0, 0);
      m.tr[{i, k}] = IntMatrix(0, 0);
    }
    for (int w : weyl_transversal(*m.lattice, i)) m.con[i][w] = IntMatrix(0, 0);
  }
  return m;
}

void check_structure(const MackeyFunctor& m) {
  if (!m.lattice) throw StructuralError("Mackey functor without a group");
  const SubgroupLattice& lat = *m.lattice;
  const int n = lat.class_count();
  if (static_cast<int>(m.levels.size()) != n) throw StructuralError("one level per subgroup class expected");
  if (static_cast<int>(m.con.size()) != n) throw StructuralError("one conjugation table per level expected");
  for (const auto& level : m.levels) level.validate();
  std::size_t expected = 0;
  for (int i = 0; i < n; ++i) {
    for (int k : lat.subgroups_of(lat.representative_index(i))) {
      ++expected;
      const int a = m.dimension(i), b = m.dimension(lat.class_of(k));
      auto r = m.res.find({i, k});
      auto t = m.tr.find({i, k});
      if (r == m.res.end() || t == m.tr.end())
        throw StructuralError("missing res/tr for class " + std::to_string(i) + ", subgroup " +
                              std::to_string(k));
      if (r->second.rows() != b || r->second.cols() != a)
        throw StructuralError("res matrix has wrong shape at class " + std::to_string(i));
      if (t->second.rows() != a || t->second.cols() != b)
        throw StructuralError("tr matrix has wrong shape at class " + std::to_string(i));
    }
    const auto w = weyl_transversal(lat, i);
    if (m.con[i].size() != w.size()) throw StructuralError("conjugation table does not match Weyl transversal");
    for (int x : w) {
      auto c = m.con[i].find(x);
      if (c == m.con[i].end()) throw StructuralError("missing conjugation matrix");
      if (c->second.rows() != m.dimension(i) || c->second.cols() != m.dimension(i))
        throw StructuralError("conjugation matrix has wrong shape");
    }
  }
  if (m.res.size() != expected || m.tr.size() != expected)
    throw StructuralError("res/tr given for pairs that are not subgroup inclusions");
}

ValidationReport validate(const MackeyFunctor& m) {
  check_structure(m);
  const SubgroupLattice& lat = *m.lattice;
  const FiniteGroup& g = lat.group();
  const auto& subs = lat.subgroups();
  const int n = lat.class_count();
  auto level_of = [&](int k) -> const FgAbelianGroup& { return m.levels[lat.class_of(k)]; };
  auto sub_json = [&](int k) { return json(subs[k].elements); };

  Recorder rec({"well_defined", "con_identity", "con_homomorphism", "res_identity", "tr_identity",
                "res_transitivity", "tr_transitivity", "res_equivariance", "tr_equivariance",
                "double_coset"});

  for (int i = 0; i < n; ++i) {
    const int hi = lat.representative_index(i);
    for (int k : lat.subgroups_of(hi)) {
      if (!well_defined(m.res.at({i, k}), m.levels[i], level_of(k)))
        rec.fail("well_defined", {{"map", "res"}, {"H", sub_json(hi)}, {"K", sub_json(k)}});
      if (!well_defined(m.tr.at({i, k}), level_of(k), m.levels[i]))
        rec.fail("well_defined", {{"map", "tr"}, {"H", sub_json(hi)}, {"K", sub_json(k)}});
    }
    for (const auto& [w, c] : m.con[i])
      if (!well_defined(c, m.levels[i], m.levels[i]))
        rec.fail("well_defined", {{"map", "con"}, {"K", sub_json(hi)}, {"g", w}});
  }

  for (int j = 0; j < n; ++j) {
    const Subgroup& kj = lat.representative(j);
    const int d = m.dimension(j);
    if (!equal_in(m.levels[j], m.con[j].at(0), identity_matrix(d)))
      rec.fail("con_identity", {{"K", kj.elements}, {"con", matrix_json(m.con[j].at(0))}});
    for (const auto& [w1, c1] : m.con[j])
      for (const auto& [w2, c2] : m.con[j]) {
        const int w = reduce_to_transversal(g, kj, g.mul(w1, w2));
        const IntMatrix lhs = c1 * c2;
        if (!equal_in(m.levels[j], lhs, m.con[j].at(w)))
          rec.fail("con_homomorphism", {{"K", kj.elements}, {"g", w1}, {"h", w2},
                                        {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(m.con[j].at(w))}});
      }
  }

  for (int i = 0; i < n; ++i) {
    const int hi = lat.representative_index(i);
    const int d = m.dimension(i);
    if (!equal_in(m.levels[i], m.res.at({i, hi}), identity_matrix(d)))
      rec.fail("res_identity", {{"H", sub_json(hi)}, {"res", matrix_json(m.res.at({i, hi}))}});
    if (!equal_in(m.levels[i], m.tr.at({i, hi}), identity_matrix(d)))
      rec.fail("tr_identity", {{"H", sub_json(hi)}, {"tr", matrix_json(m.tr.at({i, hi}))}});
  }

  for (int i = 0; i < n; ++i) {
    const int hi = lat.representative_index(i);
    const auto inside = lat.subgroups_of(hi);
    for (int k : inside)
      for (int l : lat.subgroups_of(k)) {
        if (!rec.failed("res_transitivity")) {
          const IntMatrix lhs = m.restriction(k, l) * m.res.at({i, k});
          if (!equal_in(level_of(l), lhs, m.res.at({i, l})))
            rec.fail("res_transitivity", {{"H", sub_json(hi)}, {"K", sub_json(k)}, {"L", sub_json(l)},
                                          {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(m.res.at({i, l}))}});
        }
        if (!rec.failed("tr_transitivity")) {
          const IntMatrix lhs = m.tr.at({i, k}) * m.transfer(l, k);
          if (!equal_in(m.levels[i], lhs, m.tr.at({i, l})))
            rec.fail("tr_transitivity", {{"H", sub_json(hi)}, {"K", sub_json(k)}, {"L", sub_json(l)},
                                         {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(m.tr.at({i, l}))}});
        }
      }

    for (int k : inside)
      for (int x = 0; x < g.order(); ++x) {
        const int gh = lat.index_of(conjugate(g, x, subs[hi]));
        const int gk = lat.index_of(conjugate(g, x, subs[k]));
        if (!rec.failed("res_equivariance")) {
          const IntMatrix lhs = m.conj(x, k) * m.res.at({i, k});
          const IntMatrix rhs = m.restriction(gh, gk) * m.conj(x, hi);
          if (!equal_in(level_of(k), lhs, rhs))
            rec.fail("res_equivariance", {{"H", sub_json(hi)}, {"K", sub_json(k)}, {"g", x},
                                          {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(rhs)}});
        }
        if (!rec.failed("tr_equivariance")) {
          const IntMatrix lhs = m.conj(x, hi) * m.tr.at({i, k});
          const IntMatrix rhs = m.transfer(gk, gh) * m.conj(x, k);
          if (!equal_in(m.levels[i], lhs, rhs))
            rec.fail("tr_equivariance", {{"H", sub_json(hi)}, {"K", sub_json(k)}, {"g", x},
                                         {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(rhs)}});
        }
      }

    // res^H_K tr^H_L = Σ_{x ∈ K\H/L} tr^K_{K∩xLx⁻¹} c_x res^L_{x⁻¹Kx∩L}
    for (int k : inside)
      for (int l : inside) {
        if (rec.failed("double_coset")) break;
        const IntMatrix lhs = m.res.at({i, k}) * m.tr.at({i, l});
        IntMatrix rhs(m.dimension(lat.class_of(k)), m.dimension(lat.class_of(l)));
        for (int x : double_cosets_within(g, subs[hi], subs[k], subs[l])) {
          const int a = lat.index_of(intersect(subs[k], conjugate(g, x, subs[l])));
          const int b = lat.index_of(intersect(conjugate(g, g.inv(x), subs[k]), subs[l]));
          rhs = rhs + m.transfer(a, k) * m.conj(x, b) * m.restriction(l, b);
        }
        if (!equal_in(level_of(k), lhs, rhs))
          rec.fail("double_coset", {{"H", sub_json(hi)}, {"K", sub_json(k)}, {"L", sub_json(l)},
                                    {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(rhs)}});
      }
  }
  return rec.take();
}

BurnsideLevels::BurnsideLevels(std::shared_ptr<const SubgroupLattice> lattice)
    : lattice_(std::move(lattice)) {
  const FiniteGroup& g = lattice_->group();
  for (int j = 0; j < lattice_->class_count(); ++j) {
    subs_.push_back(subgroup_as_group(g, lattice_->representative(j)));
    locals_.push_back(std::make_shared<const SubgroupLattice>(subs_.back().group));
  }
  for (const auto& s : lattice_->subgroups()) subgroup_groups_.push_back(subgroup_as_group(g, s));
}

int BurnsideLevels::basis_index(int j, const Subgroup& parent_subgroup) const {
  return locals_[j]->class_of(subs_[j].from_parent_subgroup(parent_subgroup));
}

Subgroup BurnsideLevels::basis_subgroup(int j, int b) const {
  return subs_[j].to_parent_subgroup(locals_[j]->representative(b));
}

std::vector<std::int64_t> BurnsideLevels::classify(int k, const GSet& k_set) const {
  const FiniteGroup& g = lattice_->group();
  const int j = lattice_->class_of(k);
  const int t = lattice_->conjugator(k);
  std::vector<std::int64_t> out(rank(j), 0);
  for (const auto& o : orbits(k_set)) {
    const Subgroup stab = subgroup_groups_[k].to_parent_subgroup(stabilizer(k_set, o.front()));
    ++out[basis_index(j, conjugate(g, g.inv(t), stab))];
  }
  return out;
}

MackeyFunctor burnside_mackey(const BurnsideLevels& levels) {
  const SubgroupLattice& lat = levels.lattice();
  const FiniteGroup& g = lat.group();
  const auto& subs = lat.subgroups();
  const int n = lat.class_count();
  MackeyFunctor m;
  m.lattice = levels.lattice_ptr();
  for (int j = 0; j < n; ++j) m.levels.push_back(FgAbelianGroup{levels.rank(j), {}});
  m.con.resize(n);
  for (int i = 0; i < n; ++i) {
    const Subgroup& hi = lat.representative(i);
    for (int k : lat.subgroups_of(lat.representative_index(i))) {
      const int j = lat.class_of(k);
      const int t = lat.conjugator(k);
      IntMatrix res(levels.rank(j), levels.rank(i));
      for (int b = 0; b < levels.rank(i); ++b) {
        const Subgroup l = levels.basis_subgroup(i, b);
        for (int x : double_cosets_within(g, hi, subs[k], l)) {
          const Subgroup stab = intersect(subs[k], conjugate(g, x, l));
          ++res(levels.basis_index(j, conjugate(g, g.inv(t), stab)), b);
        }
      }
      IntMatrix tr(levels.rank(i), levels.rank(j));
      for (int b = 0; b < levels.rank(j); ++b)
        ++tr(levels.basis_index(i, conjugate(g, t, levels.basis_subgroup(j, b))), b);
      m.res[{i, k}] = std::move(res);
      m.tr[{i, k}] = std::move(tr);
    }
    for (int w : weyl_transversal(lat, i)) {
      IntMatrix c(levels.rank(i), levels.rank(i));
      for (int b = 0; b < levels.rank(i); ++b)
        ++c(levels.basis_index(i, conjugate(g, w, levels.basis_subgroup(i, b))), b);
      m.con[i][w] = std::move(c);
    }
  }
  return m;
}

MackeyFunctor burnside_mackey(GroupPtr group) {
  return burnside_mackey(BurnsideLevels(std::make_shared<const SubgroupLattice>(std::move(group))));
}

namespace {

std::vector<int> maximal_subgroups(const SubgroupLattice& lat, int h) {
  const auto inside = lat.subgroups_of(h);
  std::vector<int> out;
  for (int k : inside) {
    if (k == h) continue;
    bool maximal = true;
    for (int l : inside)
      if (l != h && l != k && lat.subgroups()[l].contains(lat.subgroups()[k])) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(k);
  }
  return out;
}

// h ∈ H with h·A·h⁻¹ = B, or −1.
int conjugating_element(const FiniteGroup& g, const Subgroup& within, const Subgroup& a, const Subgroup& b) {
  for (int h : within.elements)
    if (conjugate(g, h, a) == b) return h;
  return -1;
}

}  // namespace

MackeyFunctor mackey_from_orbit_data(const OrbitData& data) {
  if (!data.lattice) throw PreconditionError("orbit data without a group");
  const SubgroupLattice& lat = *data.lattice;
  const FiniteGroup& g = lat.group();
  const auto& subs = lat.subgroups();
  const int n = lat.class_count();
  if (static_cast<int>(data.levels.size()) != n || static_cast<int>(data.con.size()) != n)
    throw StructuralError("orbit data needs one level and one conjugation table per class");

  MackeyFunctor m;
  m.lattice = data.lattice;
  m.levels = data.levels;
  m.con = data.con;
  for (int i = 0; i < n; ++i) {
    const int hi = lat.representative_index(i);
    const auto maximal = maximal_subgroups(lat, hi);
    for (const auto* table : {&data.res, &data.tr})
      for (const auto& [key, mat] : *table)
        if (key.first == i && std::find(maximal.begin(), maximal.end(), key.second) == maximal.end())
          throw PreconditionError("orbit data given for a non-maximal subgroup of class " + std::to_string(i));
    const int d = m.dimension(i);
    m.res[{i, hi}] = IntMatrix::identity(d);
    m.tr[{i, hi}] = IntMatrix::identity(d);
    for (int k : maximal) {
      if (data.res.count({i, k}) && data.tr.count({i, k})) {
        m.res[{i, k}] = data.res.at({i, k});
        m.tr[{i, k}] = data.tr.at({i, k});
        continue;
      }
      bool found = false;
      for (int k0 : maximal) {
        if (!data.res.count({i, k0}) || !data.tr.count({i, k0})) continue;
        const int h = conjugating_element(g, subs[hi], subs[k0], subs[k]);
        if (h < 0) continue;
        m.res[{i, k}] = m.conj(h, k0) * data.res.at({i, k0});
        m.tr[{i, k}] = data.tr.at({i, k0}) * m.conj(g.inv(h), k);
        found = true;
        break;
      }
      if (!found)
        throw PreconditionError("no orbit data for maximal subgroup " + json(subs[k].elements).dump() +
                                " of class " + std::to_string(i));
    }
    for (int k : lat.subgroups_of(hi)) {
      if (m.res.count({i, k})) continue;
      int via = -1;
      for (int mm : maximal)
        if (subs[mm].contains(subs[k])) {
          via = mm;
          break;
        }
      m.res[{i, k}] = m.restriction(via, k) * m.res.at({i, via});
      m.tr[{i, k}] = m.tr.at({i, via}) * m.transfer(k, via);
    }
  }
  const ValidationReport report = validate(m);
  if (const AxiomResult* bad = report.first_failure())
    throw ValidationError("orbit data is inconsistent: " + bad->axiom + " fails", bad->witness);
  return m;
}

OrbitData orbit_data(const MackeyFunctor& m) {
  const SubgroupLattice& lat = *m.lattice;
  const FiniteGroup& g = lat.group();
  const auto& subs = lat.subgroups();
  OrbitData d{m.lattice, m.levels, m.con, {}, {}};
  for (int i = 0; i < lat.class_count(); ++i) {
    const int hi = lat.representative_index(i);
    std::vector<int> chosen;
    for (int k : maximal_subgroups(lat, hi)) {
      const bool seen = std::any_of(chosen.begin(), chosen.end(), [&](int c) {
        return conjugating_element(g, subs[hi], subs[c], subs[k]) >= 0;
      });
      if (seen) continue;
      chosen.push_back(k);
      d.res[{i, k}] = m.res.at({i, k});
      d.tr[{i, k}] = m.tr.at({i, k});
    }
  }
  return d;
}

ValidationReport check_morphism(const MackeyMorphism& phi) {
  check_structure(phi.source);
  check_structure(phi.target);
  const MackeyFunctor& a = phi.source;
  const MackeyFunctor& b = phi.target;
  if (!(a.group() == b.group())) throw StructuralError("Mackey morphism between different groups");
  const SubgroupLattice& lat = *a.lattice;
  const int n = lat.class_count();
  if (static_cast<int>(phi.components.size()) != n) throw StructuralError("one component per level expected");
  for (int j = 0; j < n; ++j)
    if (phi.components[j].rows() != b.dimension(j) || phi.components[j].cols() != a.dimension(j))
      throw StructuralError("morphism component has wrong shape at level " + std::to_string(j));

  Recorder rec({"well_defined", "res_naturality", "tr_naturality", "con_naturality"});
  for (int j = 0; j < n; ++j)
    if (!well_defined(phi.components[j], a.levels[j], b.levels[j]))
      rec.fail("well_defined", {{"level", j}});
  for (const auto& [key, r] : a.res) {
    const auto [i, k] = key;
    const int j = lat.class_of(k);
    const IntMatrix lhs = phi.components[j] * r;
    const IntMatrix rhs = b.res.at(key) * phi.components[i];
    if (!equal_in(b.levels[j], lhs, rhs))
      rec.fail("res_naturality", {{"H", lat.representative(i).elements}, {"K", lat.subgroups()[k].elements},
                                  {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(rhs)}});
  }
  for (const auto& [key, t] : a.tr) {
    const auto [i, k] = key;
    const int j = lat.class_of(k);
    const IntMatrix lhs = phi.components[i] * t;
    const IntMatrix rhs = b.tr.at(key) * phi.components[j];
    if (!equal_in(b.levels[i], lhs, rhs))
      rec.fail("tr_naturality", {{"H", lat.representative(i).elements}, {"K", lat.subgroups()[k].elements},
                                 {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(rhs)}});
  }
  for (int j = 0; j < n; ++j)
    for (const auto& [w, c] : a.con[j]) {
      const IntMatrix lhs = phi.components[j] * c;
      const IntMatrix rhs = b.con[j].at(w) * phi.components[j];
      if (!equal_in(b.levels[j], lhs, rhs))
        rec.fail("con_naturality", {{"K", lat.representative(j).elements}, {"g", w},
                                    {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(rhs)}});
    }
  return rec.take();
}

bool is_group_isomorphism(const IntMatrix& f, const FgAbelianGroup& a, const FgAbelianGroup& b) {
  if (!(a == b)) return false;
  if (f.rows() != b.dimension() || f.cols() != a.dimension()) return false;
  if (!well_defined(f, a, b)) return false;
  // Isomorphic finitely generated abelian groups are Hopfian, so a
  // surjection between them is a bijection.
  std::vector<SparseRow> rows;
  for (int c = 0; c < f.cols(); ++c) {
    SparseRow row;
    for (int r = 0; r < f.rows(); ++r)
      if (f(r, c) != 0) row.emplace_back(r, f(r, c));
    rows.push_back(std::move(row));
  }
  for (std::size_t t = 0; t < b.torsion.size(); ++t)
    rows.push_back({{b.free_rank + static_cast<int>(t), b.torsion[t]}});
  return cokernel(b.dimension(), rows).group.is_trivial();
}

bool is_isomorphism(const MackeyMorphism& phi) {
  if (!check_morphism(phi).passed()) return false;
  for (std::size_t j = 0; j < phi.components.size(); ++j)
    if (!is_group_isomorphism(phi.components[j], phi.source.levels[j], phi.target.levels[j])) return false;
  return true;
}

DoubleCosetCrossCheck cross_check_double_cosets(const BurnsideLevels& levels,
                                                const MackeyFunctor& burnside, int k, int h) {
  const SubgroupLattice& lat = levels.lattice();
  const GroupPtr& gp = lat.group_ptr();
  const FiniteGroup& g = *gp;
  const auto& subs = lat.subgroups();
  const int top = lat.representative_index(lat.class_count() - 1);
  const int jk = lat.class_of(k);
  const int tk = lat.conjugator(k);

  // res^G_K tr^G_H [H/H]
  const IntMatrix composite = burnside.restriction(top, k) * burnside.transfer(h, top);
  const int unit = levels.rank(lat.class_of(h)) - 1;
  std::vector<std::int64_t> formula(levels.rank(jk));
  for (int r = 0; r < composite.rows(); ++r) formula[r] = composite(r, unit);

  const GSet x = coset_space(gp, subs[k]);
  const GSet y = coset_space(gp, subs[h]);
  const Pullback p = canonical_pullback(GMap::to_point(x), GMap::to_point(y));
  const auto h_reps = cosets(g, subs[h]);
  const auto dc = double_cosets(g, subs[k], subs[h]);

  auto dc_rep = [&](int y0) {
    int best = g.order();
    for (int a : subs[k].elements)
      for (int b : subs[h].elements) best = std::min(best, g.mul(g.mul(a, y0), b));
    return best;
  };

  std::vector<std::int64_t> from_pullback(levels.rank(jk), 0);
  std::vector<int> seen;
  json bad;
  for (const auto& orbit : orbits(p.apex)) {
    int point = -1;
    for (int q : orbit)
      if (p.first(q) == 0) {
        point = q;
        break;
      }
    if (point < 0) {
      bad = {{"reason", "orbit misses the fiber over eK"}, {"orbit", orbit}};
      break;
    }
    const int y0 = h_reps[p.second(point)];
    const int rep = dc_rep(y0);
    const Subgroup stab = stabilizer(p.apex, point);
    const int cls = levels.basis_index(jk, conjugate(g, g.inv(tk), stab));
    const int term = levels.basis_index(
        jk, conjugate(g, g.inv(tk), intersect(subs[k], conjugate(g, rep, subs[h]))));
    if (cls != term) {
      bad = {{"reason", "orbit stabilizer differs from the double coset term"}, {"double_coset", rep},
             {"orbit_class", cls}, {"term_class", term}};
      break;
    }
    seen.push_back(rep);
    ++from_pullback[cls];
  }
  std::sort(seen.begin(), seen.end());
  if (bad.is_null() && seen != dc)
    bad = {{"reason", "pullback orbits do not match K\\G/H"}, {"orbits", seen}, {"double_cosets", dc}};
  if (bad.is_null() && from_pullback != formula)
    bad = {{"reason", "orbit decomposition differs from res∘tr"}, {"pullback", from_pullback},
           {"formula", formula}};
  if (bad.is_null()) return {};
  bad["K"] = subs[k].elements;
  bad["H"] = subs[h].elements;
  return {false, bad.dump()};
}

}  // namespace eqsk
