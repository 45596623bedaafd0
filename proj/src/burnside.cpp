#include "eqsk/burnside.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "eqsk/error.hpp"

namespace eqsk {

Span::Span(GMap left_leg, GMap right_leg) : left(std::move(left_leg)), right(std::move(right_leg)) {
  if (!(left.source() == right.source())) throw PreconditionError("span legs need a shared apex");
}

Span identity_span(const GSet& y) { return Span(GMap::identity(y), GMap::identity(y)); }

Span compose(const Span& s, const Span& t) {
  if (!(s.target() == t.source()))
    throw PreconditionError("spans are not composable: middle objects differ");
  Pullback p = canonical_pullback(s.right, t.left);
  return Span(p.first.then(s.left), p.second.then(t.right));
}

namespace {

using OrbitKey = std::tuple<int, int, int>;

// Pre-filter data: stabilizer class of each orbit and the orbits its legs hit.
std::vector<OrbitKey> span_normal_form(const Span& s, const SubgroupLattice& lattice) {
  const auto src_orbits = orbits(s.source()), tgt_orbits = orbits(s.target());
  auto orbit_index = [](const std::vector<Orbit>& os, int p) {
    for (std::size_t i = 0; i < os.size(); ++i)
      if (std::binary_search(os[i].begin(), os[i].end(), p)) return static_cast<int>(i);
    return -1;
  };
  std::vector<OrbitKey> out;
  for (const auto& o : orbits(s.apex()))
    out.emplace_back(lattice.class_of(stabilizer(s.apex(), o.front())),
                     orbit_index(src_orbits, s.left(o.front())),
                     orbit_index(tgt_orbits, s.right(o.front())));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<Span2Cell> span_iso(const Span& s, const Span& t) {
  if (!(s.source() == t.source()) || !(s.target() == t.target()))
    throw PreconditionError("span_iso needs spans with the same endpoints");
  const GSet& a = s.apex();
  const GSet& b = t.apex();
  if (a.size() != b.size()) return std::nullopt;
  SubgroupLattice lattice(a.group_ptr());
  if (span_normal_form(s, lattice) != span_normal_form(t, lattice)) return std::nullopt;

  const auto orb_a = orbits(a), orb_b = orbits(b);
  std::vector<int> orbit_of_b(b.size());
  for (std::size_t i = 0; i < orb_b.size(); ++i)
    for (int p : orb_b[i]) orbit_of_b[p] = static_cast<int>(i);
  std::vector<Subgroup> stab_b(b.size());
  for (int p = 0; p < b.size(); ++p) stab_b[p] = stabilizer(b, p);

  std::vector<int> values(a.size(), -1);
  std::vector<bool> used(orb_b.size(), false);
  const int order = a.group().order();

  std::function<bool(std::size_t)> match = [&](std::size_t k) -> bool {
    if (k == orb_a.size()) return true;
    const int base = orb_a[k].front();
    const Subgroup stab = stabilizer(a, base);
    for (int p = 0; p < b.size(); ++p) {
      if (used[orbit_of_b[p]] || t.left(p) != s.left(base) || t.right(p) != s.right(base) ||
          !(stab_b[p] == stab))
        continue;
      used[orbit_of_b[p]] = true;
      for (int g = 0; g < order; ++g) values[a.act(g, base)] = b.act(g, p);
      if (match(k + 1)) return true;
      used[orbit_of_b[p]] = false;
    }
    return false;
  };
  if (!match(0)) return std::nullopt;
  return Span2Cell{GMap::unchecked(a, b, values), s, t};
}

BurnsideElement operator+(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.coefficients.size() != b.coefficients.size())
    throw PreconditionError("Burnside elements of different rank");
  BurnsideElement r = a;
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) r.coefficients[i] += b.coefficients[i];
  return r;
}

BurnsideElement operator-(const BurnsideElement& a, const BurnsideElement& b) {
  return a + (-1) * b;
}

BurnsideElement operator*(std::int64_t k, const BurnsideElement& a) {
  BurnsideElement r = a;
  for (auto& c : r.coefficients) c *= k;
  return r;
}

BurnsideRing::BurnsideRing(GroupPtr group)
    : BurnsideRing(std::make_shared<const SubgroupLattice>(std::move(group))) {}

BurnsideRing::BurnsideRing(std::shared_ptr<const SubgroupLattice> lattice)
    : lattice_(std::move(lattice)) {
  const int r = rank();
  marks_.assign(r, std::vector<std::int64_t>(r, 0));
  for (int j = 0; j < r; ++j) {
    const GSet orb = orbit(j);
    for (int i = 0; i < r; ++i)
      marks_[i][j] = static_cast<std::int64_t>(fixed_points(orb, lattice_->representative(i)).size());
  }
}

BurnsideElement BurnsideRing::zero() const {
  return BurnsideElement{std::vector<std::int64_t>(rank(), 0)};
}

BurnsideElement BurnsideRing::one() const { return basis(rank() - 1); }

BurnsideElement BurnsideRing::basis(int j) const {
  BurnsideElement e = zero();
  e.coefficients.at(j) = 1;
  return e;
}

GSet BurnsideRing::orbit(int j) const {
  return coset_space(lattice_->group_ptr(), lattice_->representative(j));
}

BurnsideElement BurnsideRing::burnside_class(const GSet& x) const {
  BurnsideElement e = zero();
  for (int c : orbit_type(x, *lattice_)) ++e.coefficients[c];
  return e;
}

void BurnsideRing::check(const BurnsideElement& a) const {
  if (static_cast<int>(a.coefficients.size()) != rank())
    throw PreconditionError("Burnside element has wrong length for " + group().name());
}

std::vector<std::int64_t> BurnsideRing::marks(const BurnsideElement& a) const {
  check(a);
  std::vector<std::int64_t> out(rank(), 0);
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) out[i] += marks_[i][j] * a.coefficients[j];
  return out;
}

const BurnsideElement& BurnsideRing::basis_product(int i, int j) const {
  std::call_once(products_once_, [this] {
    const int r = rank();
    std::vector<GSet> orbs;
    for (int k = 0; k < r; ++k) orbs.push_back(orbit(k));
    products_.assign(static_cast<std::size_t>(r) * r, zero());
    for (int a = 0; a < r; ++a)
      for (int b = a; b < r; ++b) {
        products_[a * r + b] = burnside_class(product(orbs[a], orbs[b]));
        products_[b * r + a] = products_[a * r + b];
      }
  });
  return products_.at(static_cast<std::size_t>(i) * rank() + j);
}

BurnsideElement BurnsideRing::mul(const BurnsideElement& a, const BurnsideElement& b) const {
  check(a);
  check(b);
  BurnsideElement out = zero();
  for (int i = 0; i < rank(); ++i) {
    if (a.coefficients[i] == 0) continue;
    for (int j = 0; j < rank(); ++j) {
      if (b.coefficients[j] == 0) continue;
      const auto& p = basis_product(i, j);
      const std::int64_t k = a.coefficients[i] * b.coefficients[j];
      for (int c = 0; c < rank(); ++c) out.coefficients[c] += k * p.coefficients[c];
    }
  }
  return out;
}

GSet random_gset(const SubgroupLattice& lattice, int max_size, std::mt19937_64& rng) {
  const GroupPtr& g = lattice.group_ptr();
  GSet x = GSet::empty(g);
  std::uniform_int_distribution<int> pick(0, lattice.class_count() - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  while (coin(rng) != 0) {
    const Subgroup& k = lattice.representative(pick(rng));
    if (x.size() + g->order() / k.order() > max_size) continue;
    x = disjoint_union(x, coset_space(g, k)).sum;
  }
  return x;
}

Span random_span(const SubgroupLattice& lattice, const GSet& x, const GSet& y, int max_apex, std::mt19937_64& rng) {
  const GroupPtr& g = lattice.group_ptr();
  std::vector<int> allowed;
  std::vector<std::vector<int>> fx, fy;
  for (int j = 0; j < lattice.class_count(); ++j) {
    auto a = fixed_points(x, lattice.representative(j));
    auto b = fixed_points(y, lattice.representative(j));
    if (!a.empty() && !b.empty()) allowed.push_back(j);
    fx.push_back(std::move(a));
    fy.push_back(std::move(b));
  }
  GSet apex = GSet::empty(g);
  std::vector<int> left, right;
  std::uniform_int_distribution<int> coin(0, 3);
  while (!allowed.empty() && coin(rng) != 0) {
    const int j = allowed[std::uniform_int_distribution<int>(0, static_cast<int>(allowed.size()) - 1)(rng)];
    const Subgroup& k = lattice.representative(j);
    if (apex.size() + g->order() / k.order() > max_apex) continue;
    const int px = fx[j][std::uniform_int_distribution<int>(0, static_cast<int>(fx[j].size()) - 1)(rng)];
    const int py = fy[j][std::uniform_int_distribution<int>(0, static_cast<int>(fy[j].size()) - 1)(rng)];
    for (int rep : cosets(*g, k)) {
      left.push_back(x.act(rep, px));
      right.push_back(y.act(rep, py));
    }
    apex = disjoint_union(apex, coset_space(g, k)).sum;
  }
  return Span(GMap(apex, x, left), GMap(apex, y, right));
}

AssociativityResult associativity_test(GroupPtr group, int trials, int max_apex, std::uint64_t seed, int max_base) {
  const SubgroupLattice lattice(std::move(group));
  std::mt19937_64 rng(seed);
  AssociativityResult out;
  for (int t = 0; t < trials; ++t) {
    std::vector<GSet> x;
    for (int i = 0; i < 4; ++i) x.push_back(random_gset(lattice, max_base, rng));
    const Span s = random_span(lattice, x[0], x[1], max_apex, rng);
    const Span u = random_span(lattice, x[1], x[2], max_apex, rng);
    const Span v = random_span(lattice, x[2], x[3], max_apex, rng);
    ++out.trials;
    if (!(compose(compose(s, u), v) == compose(s, compose(u, v)))) {
      if (out.failures++ == 0)
        out.witness = "{\"trial\":" + std::to_string(t) + ",\"seed\":" + std::to_string(seed) + "}";
    }
  }
  return out;
}

}  // namespace eqsk
