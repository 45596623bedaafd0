#pragma once

// Equivariant Euler characteristics of finite G-CW data in A(G).  A complex
// is only its list of orbit cells G/H × D^d; attaching maps are not stored,
// so nothing here can tell whether a cell list comes from a real complex.

#include <cstdint>
#include <vector>

#include "eqsk/burnside.hpp"
#include "eqsk/sk_dim0.hpp"

namespace eqsk {

struct Cell {
  int dim = 0;
  Subgroup stabilizer;

  bool operator==(const Cell&) const = default;
};

struct GCWComplex {
  GroupPtr group;
  std::vector<Cell> cells;  // one entry per orbit of cells
};

struct ComplexOptions {
  int max_dim = 8;
  /// Replace each stabilizer by its class representative.
  bool normalize = true;
};

/// Checks dimensions and stabilizers; throws StructuralError.
GCWComplex make_complex(GroupPtr group, std::vector<Cell> cells, ComplexOptions options = {});

/// Σ (−1)^dim [G/stabilizer]
BurnsideElement euler_characteristic(const GCWComplex& m, const BurnsideRing& ring);
BurnsideElement euler_characteristic(const GCWComplex& m);

/// The same cells as H-cells: G/K splits into H/(H ∩ xKx⁻¹) over the double
/// cosets HxK.  The result lives over `sub.group` with stabilizers in its
/// element indices.
GCWComplex restrict_complex(const GCWComplex& m, const SubgroupGroup& sub);
GCWComplex restrict_complex(const GCWComplex& m, const Subgroup& h);

/// Σ (−1)^dim |(G/H_cell)^K|, the Euler characteristic of the K-fixed cells.
std::int64_t fixed_euler(const GCWComplex& m, const Subgroup& k);

/// A G-set as a 0-dimensional complex, one 0-cell orbit per orbit.
GCWComplex zero_cells(const GSet& x);

/// A K0 class of the truncation over a point read as a Burnside element via
/// orbit types.  `k0` must come from sk_k0 of a truncation over a one-point
/// base.
BurnsideElement alpha_pi0(const SKK0& k0, const TruncatedSK& category,
                          const std::vector<std::int64_t>& k0_class, const BurnsideRing& ring);

}  // namespace eqsk
