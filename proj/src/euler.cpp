#include "eqsk/euler.hpp"

#include "eqsk/error.hpp"

namespace eqsk {

GCWComplex make_complex(GroupPtr group, std::vector<Cell> cells, ComplexOptions options) {
  if (!group) throw StructuralError("complex without a group");
  std::shared_ptr<const SubgroupLattice> lat;
  if (options.normalize) lat = std::make_shared<const SubgroupLattice>(group);
  for (Cell& c : cells) {
    if (c.dim < 0 || c.dim > options.max_dim)
      throw StructuralError("cell dimension " + std::to_string(c.dim) + " outside [0, " +
                            std::to_string(options.max_dim) + "]");
    for (int g : c.stabilizer.elements)
      if (g < 0 || g >= group->order()) throw StructuralError("stabilizer element out of range");
    if (!is_subgroup(*group, c.stabilizer.elements)) throw StructuralError("cell stabilizer is not a subgroup");
    if (lat) c.stabilizer = lat->representative(lat->class_of(c.stabilizer));
  }
  return GCWComplex{std::move(group), std::move(cells)};
}

BurnsideElement euler_characteristic(const GCWComplex& m, const BurnsideRing& ring) {
  BurnsideElement chi = ring.zero();
  for (const Cell& c : m.cells) chi.coefficients[ring.lattice().class_of(c.stabilizer)] += c.dim % 2 == 0 ? 1 : -1;
  return chi;
}

BurnsideElement euler_characteristic(const GCWComplex& m) { return euler_characteristic(m, BurnsideRing(m.group)); }

GCWComplex restrict_complex(const GCWComplex& m, const SubgroupGroup& sub) {
  const FiniteGroup& g = *m.group;
  const Subgroup h = make_subgroup(g, sub.to_parent);
  GCWComplex out{sub.group, {}};
  for (const Cell& c : m.cells)
    for (int x : double_cosets(g, h, c.stabilizer))
      out.cells.push_back(Cell{c.dim, sub.from_parent_subgroup(intersect(h, conjugate(g, x, c.stabilizer)))});
  return out;
}

GCWComplex restrict_complex(const GCWComplex& m, const Subgroup& h) {
  return restrict_complex(m, subgroup_as_group(*m.group, h));
}

std::int64_t fixed_euler(const GCWComplex& m, const Subgroup& k) {
  const FiniteGroup& g = *m.group;
  std::int64_t chi = 0;
  for (const Cell& c : m.cells) {
    // gH is K-fixed iff g⁻¹Kg ≤ H.
    std::int64_t fixed = 0;
    for (int rep : cosets(g, c.stabilizer))
      if (c.stabilizer.contains(conjugate(g, g.inv(rep), k))) ++fixed;
    chi += c.dim % 2 == 0 ? fixed : -fixed;
  }
  return chi;
}

GCWComplex zero_cells(const GSet& x) {
  GCWComplex out{x.group_ptr(), {}};
  for (const Orbit& o : orbits(x)) out.cells.push_back(Cell{0, stabilizer(x, o.front())});
  return out;
}

BurnsideElement alpha_pi0(const SKK0& k0, const TruncatedSK& category, const std::vector<std::int64_t>& k0_class,
                          const BurnsideRing& ring) {
  const TypeSystem& ts = *category.types;
  if (ts.base().size() != 1) throw PreconditionError("alpha_pi0 needs classes over a one-point base");
  if (k0_class.size() != k0.lifts.size()) throw PreconditionError("K0 class has the wrong dimension");
  BurnsideElement out = ring.zero();
  for (std::size_t c = 0; c < k0_class.size(); ++c)
    for (int t = 0; t < ts.type_count(); ++t)
      out.coefficients[ring.lattice().class_of(ts.type(t).subgroup)] += k0_class[c] * k0.lifts[c][t];
  return out;
}

}  // namespace eqsk
