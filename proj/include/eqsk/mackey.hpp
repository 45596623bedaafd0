#pragma once

// Mackey functors for a finite group as finite integer data.
//
// Levels are indexed by subgroup classes, level j sitting at the class
// representative K_j.  Any other subgroup S = t·K_j·t⁻¹ (t its lattice
// conjugator) is read in K_j's coordinates through conjugation by t.
// Homomorphisms are integer matrices acting on column vectors; two maps are
// equal when their matrices agree after reducing torsion rows.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "eqsk/burnside.hpp"
#include "eqsk/report.hpp"
#include "eqsk/smith.hpp"

namespace eqsk {

/// Minimal element of each coset n·K_j in N_G(K_j), ascending (e first).
std::vector<int> weyl_transversal(const SubgroupLattice& lattice, int class_index);

struct MackeyFunctor {
  std::shared_ptr<const SubgroupLattice> lattice;
  std::vector<FgAbelianGroup> levels;
  /// (class i, subgroup index k with S_k ≤ H_i): M(H_i) → M(S_k)
  std::map<std::pair<int, int>, IntMatrix> res;
  /// (class i, subgroup index k with S_k ≤ H_i): M(S_k) → M(H_i)
  std::map<std::pair<int, int>, IntMatrix> tr;
  /// con[j][w] for w in weyl_transversal(j): M(K_j) → M(K_j)
  std::vector<std::map<int, IntMatrix>> con;

  const FiniteGroup& group() const { return lattice->group(); }
  int dimension(int class_index) const { return levels[class_index].dimension(); }
  int level_of(int subgroup_index) const { return lattice->class_of(subgroup_index); }

  /// c_g: M(S_k) → M(g·S_k·g⁻¹)
  IntMatrix conj(int g, int k) const;
  /// res^H_K for subgroup indices K ≤ H
  IntMatrix restriction(int h, int k) const;
  /// tr^H_K for subgroup indices K ≤ H
  IntMatrix transfer(int k, int h) const;
};

MackeyFunctor zero_mackey(std::shared_ptr<const SubgroupLattice> lattice);

/// Throws StructuralError on missing entries or dimension mismatches.
void check_structure(const MackeyFunctor& m);

/// Axioms: well_defined, con_identity, con_homomorphism, res_identity,
/// tr_identity, res_transitivity, tr_transitivity, res_equivariance,
/// tr_equivariance, double_coset.
ValidationReport validate(const MackeyFunctor& m);

/// Bases of A(K_j) for every class representative K_j: the subgroup classes
/// of K_j under K_j-conjugacy, in ascending order.
class BurnsideLevels {
 public:
  explicit BurnsideLevels(std::shared_ptr<const SubgroupLattice> lattice);

  const SubgroupLattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const SubgroupLattice>& lattice_ptr() const { return lattice_; }
  int rank(int j) const { return locals_[j]->class_count(); }
  const SubgroupGroup& sub(int j) const { return subs_[j]; }
  const SubgroupLattice& local(int j) const { return *locals_[j]; }
  const std::shared_ptr<const SubgroupLattice>& local_ptr(int j) const { return locals_[j]; }
  /// Basis index of [K_j / L] for L ≤ K_j given in parent element indices.
  int basis_index(int j, const Subgroup& parent_subgroup) const;
  /// The class representative of basis element b, in parent element indices.
  Subgroup basis_subgroup(int j, int b) const;
  /// Orbit decomposition of a K-set S (K = subgroups()[k], acting through
  /// `sub_of(k)`) written in the basis of K's level.
  std::vector<std::int64_t> classify(int k, const GSet& k_set) const;
  /// K = subgroups()[k] as a group.
  const SubgroupGroup& sub_of(int k) const { return subgroup_groups_[k]; }

 private:
  std::shared_ptr<const SubgroupLattice> lattice_;
  std::vector<SubgroupGroup> subs_;
  std::vector<std::shared_ptr<const SubgroupLattice>> locals_;
  std::vector<SubgroupGroup> subgroup_groups_;
};

/// res = orbit decomposition of restricted sets, tr = induction,
/// con = conjugation transport.
MackeyFunctor burnside_mackey(const BurnsideLevels& levels);
MackeyFunctor burnside_mackey(GroupPtr group);

/// Levels, conjugations on the Weyl transversals, and res/tr for the maximal
/// subgroups K < H_i, at least one K per H_i-conjugacy class.
struct OrbitData {
  std::shared_ptr<const SubgroupLattice> lattice;
  std::vector<FgAbelianGroup> levels;
  std::vector<std::map<int, IntMatrix>> con;
  std::map<std::pair<int, int>, IntMatrix> res;
  std::map<std::pair<int, int>, IntMatrix> tr;
};

/// Fills the remaining res/tr by conjugation transport and composition along
/// chains of maximal subgroups, then validates.  Throws ValidationError
/// (with the failing axiom's witness) on inconsistent data.
MackeyFunctor mackey_from_orbit_data(const OrbitData& data);

/// The generating data of an existing functor: for every maximal K < H_i,
/// the first member of each H_i-conjugacy class.
OrbitData orbit_data(const MackeyFunctor& m);

struct MackeyMorphism {
  MackeyFunctor source;
  MackeyFunctor target;
  std::vector<IntMatrix> components;  // M(K_j) → N(K_j)
};

/// Naturality with respect to every stored res, tr and con.
ValidationReport check_morphism(const MackeyMorphism& phi);
bool is_isomorphism(const MackeyMorphism& phi);

/// Whether f: A → B is a bijection of the level groups.
bool is_group_isomorphism(const IntMatrix& f, const FgAbelianGroup& a, const FgAbelianGroup& b);
/// Matrix equality after reducing rows into the target's torsion.
bool equal_in(const FgAbelianGroup& target, const IntMatrix& a, const IntMatrix& b);

/// Second witness for the double coset formula of a Burnside functor: the
/// orbits of G/K ×_pt G/H, read through the fiber over eK, against
/// res^G_K ∘ tr^G_H applied to [H/H] and against the double cosets K\G/H.
struct DoubleCosetCrossCheck {
  bool passed = true;
  std::string witness;
};
DoubleCosetCrossCheck cross_check_double_cosets(const BurnsideLevels& levels,
                                                const MackeyFunctor& burnside, int k, int h);

}  // namespace eqsk
