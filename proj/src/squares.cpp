#include "eqsk/squares.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "eqsk/error.hpp"
#include "recorder.hpp"

namespace eqsk {

namespace {

using json = nlohmann::json;
using detail::Recorder;

struct SquareHash {
  std::size_t operator()(const Square& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int v : {s.a, s.b, s.c, s.d, s.top, s.left, s.right, s.bottom}) h = (h ^ static_cast<std::uint32_t>(v)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

json square_json(const Square& s) {
  return {{"objects", {s.a, s.b, s.c, s.d}}, {"top", s.top}, {"left", s.left}, {"right", s.right},
          {"bottom", s.bottom}};
}

// Composition data compiled for lookups.  Validates on construction.
class Category {
 public:
  Category(int object_count, const std::vector<Morphism>& morphisms,
           const std::vector<std::array<int, 3>>& comp)
      : n_(object_count), ms_(morphisms), hom_(static_cast<std::size_t>(n_) * n_), out_(n_), in_(n_) {
    const int m = static_cast<int>(ms_.size());
    for (int f = 0; f < m; ++f) {
      const auto& mo = ms_[f];
      if (mo.source < 0 || mo.source >= n_ || mo.target < 0 || mo.target >= n_)
        throw StructuralError("morphism " + std::to_string(f) + " has an endpoint out of range");
      hom_[mo.source * n_ + mo.target].push_back(f);
      out_[mo.source].push_back(f);
      in_[mo.target].push_back(f);
    }
    for (const auto& [f, g, h] : comp) {
      if (f < 0 || f >= m || g < 0 || g >= m || h < 0 || h >= m)
        throw StructuralError("composition entry refers to an unknown morphism");
      if (ms_[f].target != ms_[g].source || ms_[h].source != ms_[f].source || ms_[h].target != ms_[g].target)
        throw StructuralError("composition entry [" + std::to_string(f) + "," + std::to_string(g) + "," +
                              std::to_string(h) + "] has mismatched endpoints");
      if (!comp_.emplace(pair_key(f, g), h).second)
        throw StructuralError("composition of " + std::to_string(f) + " then " + std::to_string(g) +
                              " is listed twice");
    }
    if (m <= kDenseLimit) {
      dense_.assign(static_cast<std::size_t>(m) * m, -1);
      for (const auto& [key, h] : comp_) dense_[(key >> 32) * m + (key & 0xffffffffu)] = h;
    }
    for (int f = 0; f < m; ++f)
      for (int g : out_[ms_[f].target])
        if (then(f, g) < 0)
          throw StructuralError("composition table is missing " + std::to_string(f) + " then " +
                                std::to_string(g));
    identity_.assign(n_, -1);
    for (int x = 0; x < n_; ++x) {
      for (int e : hom(x, x)) {
        bool unit = true;
        for (int g : out_[x]) unit = unit && then(e, g) == g;
        for (int f : in_[x]) unit = unit && then(f, e) == f;
        if (unit) {
          identity_[x] = e;
          break;
        }
      }
      if (identity_[x] < 0) throw StructuralError("object " + std::to_string(x) + " has no identity morphism");
    }
    for (int f = 0; f < m; ++f)
      for (int g : out_[ms_[f].target])
        for (int h : out_[ms_[g].target])
          if (then(then(f, g), h) != then(f, then(g, h)))
            throw StructuralError("composition is not associative at (" + std::to_string(f) + "," +
                                  std::to_string(g) + "," + std::to_string(h) + ")");
    inverse_.assign(m, -1);
    for (int f = 0; f < m; ++f)
      for (int g : hom(ms_[f].target, ms_[f].source))
        if (then(f, g) == identity_[ms_[f].source] && then(g, f) == identity_[ms_[f].target]) {
          inverse_[f] = g;
          break;
        }
  }

  int object_count() const { return n_; }
  int morphism_count() const { return static_cast<int>(ms_.size()); }
  const Morphism& morphism(int f) const { return ms_[f]; }
  /// g∘f, or −1
  int then(int f, int g) const {
    if (!dense_.empty()) return dense_[static_cast<std::size_t>(f) * ms_.size() + g];
    auto it = comp_.find(pair_key(f, g));
    return it == comp_.end() ? -1 : it->second;
  }
  int identity(int x) const { return identity_[x]; }
  int inverse(int f) const { return inverse_[f]; }
  const std::vector<int>& hom(int x, int y) const { return hom_[static_cast<std::size_t>(x) * n_ + y]; }
  const std::vector<int>& out(int x) const { return out_[x]; }

 private:
  int n_;
  std::vector<Morphism> ms_;
  static constexpr int kDenseLimit = 4096;
  std::unordered_map<std::uint64_t, int> comp_;
  std::vector<int> dense_;  // comp_ as an m × m table for small m
  std::vector<std::vector<int>> hom_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<int> identity_;
  std::vector<int> inverse_;
};

void check_squares_and_coproducts(const SquaresPresentation& p, const Category& cat) {
  const int n = cat.object_count(), m = cat.morphism_count();
  if (p.distinguished < 0 || p.distinguished >= n) throw StructuralError("distinguished object out of range");
  auto ends = [&](int f, int s, int t) {
    return f >= 0 && f < m && cat.morphism(f).source == s && cat.morphism(f).target == t;
  };
  for (std::size_t i = 0; i < p.squares.size(); ++i) {
    const Square& s = p.squares[i];
    for (int x : {s.a, s.b, s.c, s.d})
      if (x < 0 || x >= n) throw StructuralError("square " + std::to_string(i) + " has an object out of range");
    if (!ends(s.top, s.a, s.b) || !ends(s.left, s.a, s.c) || !ends(s.right, s.b, s.d) ||
        !ends(s.bottom, s.c, s.d))
      throw StructuralError("square " + std::to_string(i) + " has morphisms with mismatched endpoints");
  }
  std::map<std::pair<int, int>, int> seen;
  for (const auto& e : p.coproducts) {
    for (int x : {e.left, e.right, e.object})
      if (x < 0 || x >= n) throw StructuralError("coproduct entry has an object out of range");
    if (!ends(e.in_left, e.left, e.object) || !ends(e.in_right, e.right, e.object))
      throw StructuralError("coproduct injections have mismatched endpoints");
    if (!seen.emplace(std::make_pair(e.left, e.right), 0).second)
      throw StructuralError("coproduct of a pair listed twice");
  }
  for (int f = 0; f < m; ++f)
    if (p.morphisms[f].iso != (cat.inverse(f) >= 0))
      throw StructuralError("morphism " + std::to_string(f) + " iso flag disagrees with the composition table");
}

Category compile(const SquaresPresentation& p) {
  Category cat(static_cast<int>(p.objects.size()), p.morphisms, p.comp);
  check_squares_and_coproducts(p, cat);
  return cat;
}

}  // namespace

void check_structure(const SquaresPresentation& p) { compile(p); }

ValidationReport check_axioms(const SquaresPresentation& p) {
  const Category cat = compile(p);
  const int n = cat.object_count(), m = cat.morphism_count();
  const int o = p.distinguished;
  auto is_h = [&](int f) { return p.morphisms[f].horizontal; };
  auto is_v = [&](int f) { return p.morphisms[f].vertical; };
  Recorder rec({"subcategories", "i", "ii", "iii", "iv", "v", "cocartesian"});

  const std::unordered_set<Square, SquareHash> listed(p.squares.begin(), p.squares.end());
  auto is_listed = [&](const Square& s) { return listed.count(s) > 0; };

  // Subcategories: identities and composites stay horizontal / vertical.
  for (int x = 0; x < n; ++x)
    if (!is_h(cat.identity(x)) || !is_v(cat.identity(x)))
      rec.fail("subcategories", {{"reason", "identity is not horizontal and vertical"}, {"object", x}});
  for (const auto& [f, g, h] : p.comp) {
    if (is_h(f) && is_h(g) && !is_h(h))
      rec.fail("subcategories", {{"reason", "composite of horizontal morphisms"}, {"comp", {f, g, h}}});
    if (is_v(f) && is_v(g) && !is_v(h))
      rec.fail("subcategories", {{"reason", "composite of vertical morphisms"}, {"comp", {f, g, h}}});
  }

  // (i) closure under coproducts.
  std::map<std::pair<int, int>, const CoproductEntry*> coproduct;
  for (const auto& e : p.coproducts) coproduct[{e.left, e.right}] = &e;
  auto find_coproduct = [&](int x, int y) -> const CoproductEntry* {
    auto it = coproduct.find({x, y});
    return it == coproduct.end() ? nullptr : it->second;
  };
  std::unordered_map<std::uint64_t, int> induced_memo;
  // f ⊔ f' via the universal property, or −1.
  auto induced = [&](int f, int f2) {
    auto [it, fresh] = induced_memo.emplace(pair_key(f, f2), -1);
    if (!fresh) return it->second;
    const CoproductEntry* s = find_coproduct(cat.morphism(f).source, cat.morphism(f2).source);
    const CoproductEntry* t = find_coproduct(cat.morphism(f).target, cat.morphism(f2).target);
    const int want_l = cat.then(f, t->in_left), want_r = cat.then(f2, t->in_right);
    for (int u : cat.hom(s->object, t->object))
      if (cat.then(s->in_left, u) == want_l && cat.then(s->in_right, u) == want_r) {
        it->second = u;
        break;
      }
    return it->second;
  };
  // Only pairs whose D corners have a coproduct can produce a sum square.
  std::vector<std::vector<int>> by_d(n), d_partners(n);
  for (std::size_t x = 0; x < p.squares.size(); ++x) by_d[p.squares[x].d].push_back(static_cast<int>(x));
  for (const auto& e : p.coproducts) d_partners[e.left].push_back(e.right);
  for (std::size_t x = 0; x < p.squares.size() && !rec.failed("i"); ++x) {
    const Square& s = p.squares[x];
    for (int d2 : d_partners[s.d]) {
      for (int y : by_d[d2]) {
        const Square& t = p.squares[y];
        const CoproductEntry* ea = find_coproduct(s.a, t.a);
        const CoproductEntry* eb = find_coproduct(s.b, t.b);
        const CoproductEntry* ec = find_coproduct(s.c, t.c);
        const CoproductEntry* ed = find_coproduct(s.d, t.d);
        if (!ea || !eb || !ec || !ed) continue;
        const Square sum{ea->object,           eb->object,             ec->object,
                         ed->object,           induced(s.top, t.top),  induced(s.left, t.left),
                         induced(s.right, t.right), induced(s.bottom, t.bottom)};
        if (sum.top < 0 || sum.left < 0 || sum.right < 0 || sum.bottom < 0) {
          rec.fail("i", {{"reason", "coproduct of square legs has no induced morphism"},
                         {"first", square_json(s)}, {"second", square_json(t)}});
          break;
        }
        if (!is_listed(sum)) {
          rec.fail("i", {{"reason", "coproduct square is not distinguished"}, {"first", square_json(s)},
                         {"second", square_json(t)}, {"missing", square_json(sum)}});
          break;
        }
      }
      if (rec.failed("i")) break;
    }
  }

  // (ii) squares commute and are closed under pasting.
  std::map<int, std::vector<const Square*>> by_left, by_top;
  for (const auto& s : p.squares) {
    by_left[s.left].push_back(&s);
    by_top[s.top].push_back(&s);
  }
  for (const auto& s : p.squares) {
    if (rec.failed("ii")) break;
    if (!is_h(s.top) || !is_h(s.bottom) || !is_v(s.left) || !is_v(s.right)) {
      rec.fail("ii", {{"reason", "square legs have the wrong type"}, {"square", square_json(s)}});
      break;
    }
    if (cat.then(s.top, s.right) != cat.then(s.left, s.bottom)) {
      rec.fail("ii", {{"reason", "square does not commute"}, {"square", square_json(s)}});
      break;
    }
  }
  for (const auto& s : p.squares) {
    if (rec.failed("ii")) break;
    for (const Square* t : by_left[s.right]) {
      const Square pasted{s.a, t->b, s.c, t->d, cat.then(s.top, t->top), s.left, t->right,
                          cat.then(s.bottom, t->bottom)};
      if (!is_listed(pasted)) {
        rec.fail("ii", {{"reason", "horizontal pasting is not distinguished"}, {"first", square_json(s)},
                        {"second", square_json(*t)}, {"missing", square_json(pasted)}});
        break;
      }
    }
    if (rec.failed("ii")) break;
    for (const Square* t : by_top[s.bottom]) {
      const Square pasted{s.a, s.b, t->c, t->d, s.top, cat.then(s.left, t->left), cat.then(s.right, t->right),
                          t->bottom};
      if (!is_listed(pasted)) {
        rec.fail("ii", {{"reason", "vertical pasting is not distinguished"}, {"first", square_json(s)},
                        {"second", square_json(*t)}, {"missing", square_json(pasted)}});
        break;
      }
    }
  }

  // (iii) isomorphisms are horizontal and vertical.
  for (int f = 0; f < m; ++f)
    if (cat.inverse(f) >= 0 && (!is_h(f) || !is_v(f))) {
      rec.fail("iii", {{"morphism", f}, {"source", cat.morphism(f).source}, {"target", cat.morphism(f).target},
                       {"horizontal", is_h(f)}, {"vertical", is_v(f)}});
      break;
    }

  // (iv) commuting squares with iso legs, or iso top and bottom.
  std::vector<std::vector<int>> v_isos(n), h_isos(n);
  for (int f = 0; f < m; ++f) {
    if (cat.inverse(f) < 0) continue;
    if (is_v(f)) v_isos[cat.morphism(f).source].push_back(f);
    if (is_h(f)) h_isos[cat.morphism(f).source].push_back(f);
  }
  for (int f = 0; f < m && !rec.failed("iv"); ++f) {
    const int a = cat.morphism(f).source, b = cat.morphism(f).target;
    if (is_h(f))
      for (int u : v_isos[a])
        for (int w : v_isos[b]) {
          const int bottom = cat.then(cat.then(cat.inverse(u), f), w);
          if (bottom < 0 || !is_h(bottom)) continue;
          const Square s{a, b, cat.morphism(u).target, cat.morphism(w).target, f, u, w, bottom};
          if (!is_listed(s) && !rec.failed("iv"))
            rec.fail("iv", {{"reason", "square with vertical isomorphism legs"}, {"missing", square_json(s)}});
        }
    if (is_v(f))
      for (int u : h_isos[a])
        for (int w : h_isos[b]) {
          const int right = cat.then(cat.then(cat.inverse(u), f), w);
          if (right < 0 || !is_v(right)) continue;
          const Square s{a, cat.morphism(u).target, b, cat.morphism(w).target, u, f, right, w};
          if (!is_listed(s) && !rec.failed("iv"))
            rec.fail("iv", {{"reason", "square with horizontal isomorphism top and bottom"},
                            {"missing", square_json(s)}});
        }
  }

  // (v) O is initial for horizontal and for vertical morphisms.
  std::vector<int> unique_h(n, -1), unique_v(n, -1);
  for (int x = 0; x < n; ++x) {
    std::vector<int> hs, vs;
    for (int f : cat.hom(o, x)) {
      if (is_h(f)) hs.push_back(f);
      if (is_v(f)) vs.push_back(f);
    }
    if (hs.size() == 1) unique_h[x] = hs[0];
    if (vs.size() == 1) unique_v[x] = vs[0];
    if ((hs.size() != 1 || vs.size() != 1) && !rec.failed("v"))
      rec.fail("v", {{"object", x}, {"horizontal_from_O", hs}, {"vertical_from_O", vs}});
  }

  // Cocartesian: O is the coproduct unit and the inclusion squares are distinguished.
  for (int x = 0; x < n && !rec.failed("cocartesian"); ++x)
    for (const auto* e : {find_coproduct(o, x), find_coproduct(x, o)}) {
      if (!e) {
        rec.fail("cocartesian", {{"reason", "no coproduct with O"}, {"object", x}});
        break;
      }
      const int inj = e->left == x ? e->in_left : e->in_right;
      if (cat.inverse(inj) < 0) {
        rec.fail("cocartesian", {{"reason", "O is not a coproduct unit"}, {"object", x}, {"injection", inj}});
        break;
      }
    }
  for (const auto& e : p.coproducts) {
    if (rec.failed("cocartesian")) break;
    const int a = e.left, b = e.right;
    if (unique_h[a] < 0 || unique_h[b] < 0 || unique_v[a] < 0 || unique_v[b] < 0) {
      rec.fail("cocartesian", {{"reason", "no unique morphism out of O"}, {"pair", {a, b}}});
      break;
    }
    const Square first{o, b, a, e.object, unique_h[b], unique_v[a], e.in_right, e.in_left};
    const Square second{o, a, b, e.object, unique_h[a], unique_v[b], e.in_left, e.in_right};
    for (const Square& s : {first, second})
      if (!is_listed(s)) {
        rec.fail("cocartesian", {{"reason", "coproduct inclusion square is not distinguished"},
                                 {"pair", {a, b}}, {"missing", square_json(s)}});
        break;
      }
  }
  return rec.take();
}

K0Result k0_relations(int object_count, int distinguished, const std::vector<std::array<int, 4>>& squares,
                      const std::vector<std::pair<int, int>>& identifications) {
  std::vector<int> parent(object_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [x, y] : identifications) {
    const int rx = find(x), ry = find(y);
    if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
  }
  std::vector<int> gen(object_count, -1);
  int gens = 0;
  for (int x = 0; x < object_count; ++x)
    if (find(x) == x) gen[x] = gens++;
  for (int x = 0; x < object_count; ++x) gen[x] = gen[find(x)];

  std::vector<SparseRow> rows;
  rows.push_back({{gen[distinguished], 1}});
  for (const auto& [a, b, c, d] : squares)
    rows.push_back({{gen[a], 1}, {gen[d], 1}, {gen[b], -1}, {gen[c], -1}});
  Cokernel ck = cokernel(gens, rows);
  K0Result out;
  out.group = ck.group;
  for (int x = 0; x < object_count; ++x) out.classes.push_back(ck.classes[gen[x]]);
  std::vector<int> object_of(gens, -1);
  for (int x = object_count - 1; x >= 0; --x) object_of[gen[x]] = x;
  for (const auto& row : ck.lifts) {
    SparseRow lift;
    for (const auto& [g, c] : row) lift.emplace_back(object_of[g], c);
    out.lifts.push_back(std::move(lift));
  }
  return out;
}

K0Result k0(const SquaresPresentation& p, K0Options options) {
  if (!options.force) {
    const ValidationReport report = check_axioms(p);
    if (const AxiomResult* bad = report.first_failure())
      throw PreconditionError("presentation fails axiom " + bad->axiom + ": " + bad->witness);
  } else {
    check_structure(p);
  }
  std::vector<std::array<int, 4>> rels;
  for (const auto& s : p.squares) rels.push_back({s.a, s.b, s.c, s.d});
  std::vector<std::pair<int, int>> ids;
  for (const auto& f : p.morphisms)
    if (f.iso) ids.emplace_back(f.source, f.target);
  return k0_relations(static_cast<int>(p.objects.size()), p.distinguished, rels, ids);
}

std::vector<Square> all_commutative_squares(const SquaresPresentation& p) {
  const Category cat = compile(p);
  const int n = cat.object_count(), m = cat.morphism_count();
  std::vector<Square> out;
  for (int f = 0; f < m; ++f) {
    if (!p.morphisms[f].horizontal) continue;
    const int a = cat.morphism(f).source, b = cat.morphism(f).target;
    for (int g : cat.out(a)) {
      if (!p.morphisms[g].vertical) continue;
      const int c = cat.morphism(g).target;
      for (int d = 0; d < n; ++d)
        for (int r : cat.hom(b, d)) {
          if (!p.morphisms[r].vertical) continue;
          for (int k : cat.hom(c, d))
            if (p.morphisms[k].horizontal && cat.then(f, r) == cat.then(g, k))
              out.push_back(Square{a, b, c, d, f, g, r, k});
        }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SquaresPresentation from_waldhausen(const WaldhausenData& data, WaldhausenOptions options) {
  const int n = static_cast<int>(data.objects.size());
  const int m = static_cast<int>(data.morphisms.size());
  SquaresPresentation p;
  p.objects = data.objects;
  p.distinguished = data.zero;
  p.comp = data.comp;
  p.coproducts = data.coproducts;
  std::vector<bool> cofib(m, false), weak(m, false);
  for (int f : data.cofibrations) {
    if (f < 0 || f >= m) throw StructuralError("cofibration id out of range");
    cofib[f] = true;
  }
  for (int f : data.weak_equivalences) {
    if (f < 0 || f >= m) throw StructuralError("weak equivalence id out of range");
    weak[f] = true;
  }
  for (int f = 0; f < m; ++f)
    p.morphisms.push_back(Morphism{data.morphisms[f].first, data.morphisms[f].second, cofib[f], true, false});
  {
    const Category raw(n, p.morphisms, p.comp);
    for (int f = 0; f < m; ++f) p.morphisms[f].iso = raw.inverse(f) >= 0;
  }
  const Category cat = compile(p);

  struct Cocone {
    int object, from_b, from_c;
  };
  // Pushout of B ← A → C by exhaustive universal-property search.
  auto pushout = [&](int f, int g) -> std::optional<Cocone> {
    const int b = cat.morphism(f).target, c = cat.morphism(g).target;
    std::vector<Cocone> cocones;
    for (int q = 0; q < n; ++q)
      for (int qb : cat.hom(b, q))
        for (int qc : cat.hom(c, q))
          if (cat.then(f, qb) == cat.then(g, qc)) cocones.push_back({q, qb, qc});
    for (const Cocone& cand : cocones) {
      bool universal = true;
      for (const Cocone& other : cocones) {
        int count = 0;
        for (int u : cat.hom(cand.object, other.object))
          if (cat.then(cand.from_b, u) == other.from_b && cat.then(cand.from_c, u) == other.from_c) ++count;
        if (count != 1) {
          universal = false;
          break;
        }
      }
      if (universal) return cand;
    }
    return std::nullopt;
  };

  for (int f = 0; f < m; ++f) {
    if (!cofib[f]) continue;
    const int a = cat.morphism(f).source, b = cat.morphism(f).target;
    for (int g : cat.out(a)) {
      const int c = cat.morphism(g).target;
      const auto po = pushout(f, g);
      if (!po) {
        if (options.skip_missing_pushouts) continue;
        throw IncompletenessError("no pushout in the fragment for the cocone " + data.objects[b] + " <-[" +
                                  std::to_string(f) + "]- " + data.objects[a] + " -[" + std::to_string(g) +
                                  "]-> " + data.objects[c]);
      }
      for (int d = 0; d < n; ++d)
        for (int r : cat.hom(b, d))
          for (int k : cat.hom(c, d)) {
            if (!cofib[k] || cat.then(f, r) != cat.then(g, k)) continue;
            for (int u : cat.hom(po->object, d))
              if (cat.then(po->from_b, u) == r && cat.then(po->from_c, u) == k) {
                if (weak[u]) p.squares.push_back(Square{a, b, c, d, f, g, r, k});
                break;
              }
          }
    }
  }
  std::sort(p.squares.begin(), p.squares.end());
  return p;
}

}  // namespace eqsk
