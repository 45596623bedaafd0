#include "eqsk/gset.hpp"

#include <algorithm>
#include <numeric>

#include "eqsk/error.hpp"

namespace eqsk {

GSet::GSet(GroupPtr group, int size, const std::vector<std::vector<int>>& action)
    : group_(std::move(group)), size_(size) {
  if (!group_) throw PreconditionError("G-set needs a group");
  if (size < 0) throw StructuralError("G-set size is negative");
  const int n = group_->order();
  if (static_cast<int>(action.size()) != n)
    throw StructuralError("G-set action must list one permutation per group element");
  action_.reserve(static_cast<std::size_t>(n) * size);
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(action[g].size()) != size)
      throw StructuralError("G-set action row " + std::to_string(g) + " has wrong length");
    std::vector<bool> hit(size, false);
    for (int v : action[g]) {
      if (v < 0 || v >= size || hit[v])
        throw StructuralError("G-set action row " + std::to_string(g) + " is not a permutation");
      hit[v] = true;
    }
    action_.insert(action_.end(), action[g].begin(), action[g].end());
  }
  for (int x = 0; x < size; ++x)
    if (act(0, x) != x) throw StructuralError("identity does not act trivially");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const int gh = group_->mul(g, h);
      for (int x = 0; x < size; ++x)
        if (act(gh, x) != act(g, act(h, x)))
          throw StructuralError("action is not a homomorphism at (" + std::to_string(g) + "," +
                                std::to_string(h) + ")");
    }
}

GSet GSet::from_flat_unchecked(GroupPtr group, int size, std::vector<int> action) {
  GSet s;
  s.group_ = std::move(group);
  s.size_ = size;
  s.action_ = std::move(action);
  return s;
}

GSet GSet::empty(GroupPtr group) { return from_flat_unchecked(std::move(group), 0, {}); }

GSet GSet::trivial(GroupPtr group, int size) {
  std::vector<int> action;
  action.reserve(static_cast<std::size_t>(group->order()) * size);
  for (int g = 0; g < group->order(); ++g)
    for (int x = 0; x < size; ++x) action.push_back(x);
  return from_flat_unchecked(std::move(group), size, std::move(action));
}

bool GSet::same_group(const GSet& other) const {
  return group_ == other.group_ || *group_ == *other.group_;
}

bool GSet::operator==(const GSet& other) const {
  return size_ == other.size_ && action_ == other.action_ && same_group(other);
}

GMap::GMap(GSet source, GSet target, std::vector<int> values)
    : source_(std::move(source)), target_(std::move(target)), values_(std::move(values)) {
  if (!source_.same_group(target_)) throw PreconditionError("G-map between different groups");
  if (static_cast<int>(values_.size()) != source_.size())
    throw StructuralError("G-map value count does not match source size");
  for (int v : values_)
    if (v < 0 || v >= target_.size()) throw StructuralError("G-map value out of range");
  for (int g = 0; g < source_.group().order(); ++g)
    for (int x = 0; x < source_.size(); ++x)
      if (values_[source_.act(g, x)] != target_.act(g, values_[x]))
        throw StructuralError("G-map is not equivariant at (g=" + std::to_string(g) +
                              ", x=" + std::to_string(x) + ")");
}

GMap GMap::unchecked(GSet source, GSet target, std::vector<int> values) {
  GMap m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.values_ = std::move(values);
  return m;
}

GMap GMap::identity(const GSet& x) {
  std::vector<int> v(x.size());
  std::iota(v.begin(), v.end(), 0);
  return unchecked(x, x, std::move(v));
}

GMap GMap::to_point(const GSet& x) {
  return unchecked(x, GSet::trivial(x.group_ptr(), 1), std::vector<int>(x.size(), 0));
}

bool GMap::injective() const {
  std::vector<bool> hit(target_.size(), false);
  for (int v : values_) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool GMap::surjective() const {
  std::vector<bool> hit(target_.size(), false);
  for (int v : values_) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

GMap GMap::then(const GMap& next) const {
  if (!(target_ == next.source_)) throw PreconditionError("G-maps are not composable");
  std::vector<int> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = next.values_[values_[i]];
  return unchecked(source_, next.target_, std::move(v));
}

GMap GMap::inverse() const {
  if (!bijective()) throw PreconditionError("only bijections have inverses");
  std::vector<int> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[values_[i]] = static_cast<int>(i);
  return unchecked(target_, source_, std::move(v));
}

std::vector<Orbit> orbits(const GSet& x) {
  std::vector<bool> seen(x.size(), false);
  std::vector<Orbit> out;
  for (int start = 0; start < x.size(); ++start) {
    if (seen[start]) continue;
    Orbit orbit{start};
    seen[start] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (int g = 0; g < x.group().order(); ++g) {
        int y = x.act(g, orbit[i]);
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

Subgroup stabilizer(const GSet& x, int point) {
  if (point < 0 || point >= x.size()) throw PreconditionError("point out of range");
  std::vector<int> out;
  for (int g = 0; g < x.group().order(); ++g)
    if (x.act(g, point) == point) out.push_back(g);
  return Subgroup{std::move(out)};
}

std::vector<int> fixed_points(const GSet& x, const Subgroup& subgroup) {
  std::vector<int> out;
  for (int p = 0; p < x.size(); ++p) {
    bool fixed = std::all_of(subgroup.elements.begin(), subgroup.elements.end(),
                             [&](int h) { return x.act(h, p) == p; });
    if (fixed) out.push_back(p);
  }
  return out;
}

std::vector<int> orbit_type(const GSet& x, const SubgroupLattice& lattice) {
  std::vector<int> out;
  for (const auto& orbit : orbits(x)) out.push_back(lattice.class_of(stabilizer(x, orbit.front())));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> orbit_type(const GSet& x) {
  SubgroupLattice lattice(x.group_ptr());
  return orbit_type(x, lattice);
}

std::optional<GMap> iso(const GSet& x, const GSet& y, const SubgroupLattice& lattice) {
  if (!x.same_group(y)) throw PreconditionError("iso() needs G-sets over the same group");
  if (x.size() != y.size()) return std::nullopt;
  const auto ox = orbits(x), oy = orbits(y);
  if (ox.size() != oy.size()) return std::nullopt;
  std::vector<int> class_y;
  for (const auto& o : oy) class_y.push_back(lattice.class_of(stabilizer(y, o.front())));
  std::vector<bool> used(oy.size(), false);
  std::vector<int> values(x.size(), -1);
  for (const auto& o : ox) {
    const Subgroup stab = stabilizer(x, o.front());
    const int cls = lattice.class_of(stab);
    std::size_t match = oy.size();
    for (std::size_t j = 0; j < oy.size(); ++j)
      if (!used[j] && class_y[j] == cls) {
        match = j;
        break;
      }
    if (match == oy.size()) return std::nullopt;
    used[match] = true;
    int base = -1;
    for (int p : oy[match])
      if (stabilizer(y, p) == stab) {
        base = p;
        break;
      }
    for (int g = 0; g < x.group().order(); ++g) values[x.act(g, o.front())] = y.act(g, base);
  }
  return GMap::unchecked(x, y, std::move(values));
}

std::optional<GMap> iso(const GSet& x, const GSet& y) {
  SubgroupLattice lattice(x.group_ptr());
  return iso(x, y, lattice);
}

Coproduct disjoint_union(const GSet& x, const GSet& y) {
  if (!x.same_group(y)) throw PreconditionError("disjoint union needs the same group");
  const int nx = x.size(), ny = y.size(), n = nx + ny;
  std::vector<int> action;
  action.reserve(static_cast<std::size_t>(x.group().order()) * n);
  for (int g = 0; g < x.group().order(); ++g) {
    for (int p = 0; p < nx; ++p) action.push_back(x.act(g, p));
    for (int p = 0; p < ny; ++p) action.push_back(nx + y.act(g, p));
  }
  GSet sum = GSet::from_flat_unchecked(x.group_ptr(), n, std::move(action));
  std::vector<int> left(nx), right(ny);
  std::iota(left.begin(), left.end(), 0);
  std::iota(right.begin(), right.end(), nx);
  return Coproduct{sum, GMap::unchecked(x, sum, std::move(left)),
                   GMap::unchecked(y, sum, std::move(right))};
}

GSet product(const GSet& x, const GSet& y) {
  if (!x.same_group(y)) throw PreconditionError("product needs the same group");
  const int nx = x.size(), ny = y.size();
  std::vector<int> action;
  action.reserve(static_cast<std::size_t>(x.group().order()) * nx * ny);
  for (int g = 0; g < x.group().order(); ++g)
    for (int a = 0; a < nx; ++a)
      for (int b = 0; b < ny; ++b) action.push_back(x.act(g, a) * ny + y.act(g, b));
  return GSet::from_flat_unchecked(x.group_ptr(), nx * ny, std::move(action));
}

Pullback canonical_pullback(const GMap& f, const GMap& g) {
  if (!(f.target() == g.target())) throw PreconditionError("pullback legs need a common target");
  const GSet& a = f.source();
  const GSet& b = g.source();
  std::vector<std::pair<int, int>> pairs;
  // Index pairs by (a, b) lexicographically; lookup via a dense table.
  std::vector<int> index(static_cast<std::size_t>(a.size()) * b.size(), -1);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      if (f(i) == g(j)) {
        index[static_cast<std::size_t>(i) * b.size() + j] = static_cast<int>(pairs.size());
        pairs.emplace_back(i, j);
      }
  const int n = static_cast<int>(pairs.size());
  std::vector<int> action;
  action.reserve(static_cast<std::size_t>(a.group().order()) * n);
  for (int h = 0; h < a.group().order(); ++h)
    for (const auto& [i, j] : pairs)
      action.push_back(index[static_cast<std::size_t>(a.act(h, i)) * b.size() + b.act(h, j)]);
  GSet apex = GSet::from_flat_unchecked(a.group_ptr(), n, std::move(action));
  std::vector<int> first, second;
  first.reserve(n);
  second.reserve(n);
  for (const auto& [i, j] : pairs) {
    first.push_back(i);
    second.push_back(j);
  }
  return Pullback{apex, GMap::unchecked(apex, a, std::move(first)),
                  GMap::unchecked(apex, b, std::move(second))};
}

Pushout pushout_along_injections(const GMap& f, const GMap& g) {
  if (!(f.source() == g.source())) throw PreconditionError("pushout legs need a common source");
  if (!f.injective() || !g.injective())
    throw PreconditionError("pushout_along_injections needs injective legs");
  const GSet& b = f.target();
  const GSet& c = g.target();
  std::vector<int> preimage(b.size(), -1);
  for (int a = 0; a < f.source().size(); ++a) preimage[f(a)] = a;
  // Position in D of every point of B.
  std::vector<int> place(b.size(), -1);
  int next = c.size();
  for (int p = 0; p < b.size(); ++p)
    place[p] = preimage[p] >= 0 ? g(preimage[p]) : next++;
  const int n = next;
  std::vector<int> action;
  action.reserve(static_cast<std::size_t>(b.group().order()) * n);
  std::vector<int> complement;
  for (int p = 0; p < b.size(); ++p)
    if (preimage[p] < 0) complement.push_back(p);
  for (int h = 0; h < b.group().order(); ++h) {
    for (int p = 0; p < c.size(); ++p) action.push_back(c.act(h, p));
    for (int p : complement) action.push_back(place[b.act(h, p)]);
  }
  GSet d = GSet::from_flat_unchecked(b.group_ptr(), n, std::move(action));
  std::vector<int> from_c(c.size());
  std::iota(from_c.begin(), from_c.end(), 0);
  return Pushout{d, GMap::unchecked(b, d, std::move(place)), GMap::unchecked(c, d, std::move(from_c))};
}

std::vector<GMap> hom_set(const GSet& x, const GSet& y, HomOptions options) {
  if (!x.same_group(y)) throw PreconditionError("hom_set needs the same group");
  const auto orb = orbits(x);
  std::vector<std::vector<int>> choices;
  std::size_t total = 1;
  for (const auto& o : orb) {
    choices.push_back(fixed_points(y, stabilizer(x, o.front())));
    if (choices.back().empty()) return {};
    if (total > options.cap / choices.back().size())
      throw SizeCapError("hom_set would exceed cap " + std::to_string(options.cap));
    total *= choices.back().size();
  }
  std::vector<GMap> out;
  out.reserve(total);
  std::vector<std::size_t> pick(orb.size(), 0);
  std::vector<int> values(x.size());
  while (true) {
    for (std::size_t k = 0; k < orb.size(); ++k) {
      const int base = orb[k].front(), image = choices[k][pick[k]];
      for (int g = 0; g < x.group().order(); ++g) values[x.act(g, base)] = y.act(g, image);
    }
    out.push_back(GMap::unchecked(x, y, values));
    std::size_t k = 0;
    while (k < orb.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == orb.size()) break;
  }
  return out;
}

GSet coset_space(const GroupPtr& group, const Subgroup& subgroup) {
  const CosetTable table = coset_table(*group, subgroup);
  const int n = table.size();
  std::vector<int> action;
  action.reserve(static_cast<std::size_t>(group->order()) * n);
  for (int g = 0; g < group->order(); ++g)
    for (int i = 0; i < n; ++i) action.push_back(table.coset_of[group->mul(g, table.representatives[i])]);
  return GSet::from_flat_unchecked(group, n, std::move(action));
}

GSet restrict_to(const GSet& x, const SubgroupGroup& sub) {
  const int order = sub.group->order();
  std::vector<int> action;
  action.reserve(static_cast<std::size_t>(order) * x.size());
  for (int h = 0; h < order; ++h) {
    auto perm = x.permutation(sub.to_parent[h]);
    action.insert(action.end(), perm.begin(), perm.end());
  }
  return GSet::from_flat_unchecked(sub.group, x.size(), std::move(action));
}

Induced induce(const GroupPtr& group, const Subgroup& subgroup, const SubgroupGroup& sub,
               const GSet& h_set) {
  if (!(h_set.group() == *sub.group)) throw PreconditionError("induce needs a set over the subgroup");
  const CosetTable table = coset_table(*group, subgroup);
  const int m = table.size(), s = h_set.size(), n = m * s;
  std::vector<int> action;
  action.reserve(static_cast<std::size_t>(group->order()) * n);
  for (int g = 0; g < group->order(); ++g)
    for (int i = 0; i < m; ++i) {
      const int ggi = group->mul(g, table.representatives[i]);
      const int j = table.coset_of[ggi];
      // h = g_j⁻¹ · g · g_i lies in H.
      const int h = group->mul(group->inv(table.representatives[j]), ggi);
      const int local = sub.from_parent[h];
      for (int p = 0; p < s; ++p) action.push_back(j * s + h_set.act(local, p));
    }
  GSet total = GSet::from_flat_unchecked(group, n, std::move(action));
  std::vector<int> to_cosets(n);
  for (int i = 0; i < n; ++i) to_cosets[i] = s == 0 ? 0 : i / s;
  GSet base = coset_space(group, subgroup);
  return Induced{total, GMap::unchecked(total, base, std::move(to_cosets))};
}

}  // namespace eqsk
