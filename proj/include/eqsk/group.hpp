#pragma once

// Finite groups given by full Cayley tables, with the subgroup, coset and
// conjugacy machinery the rest of the library is indexed by.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace eqsk {

using Permutation = std::vector<int>;

/// A finite group stored as its multiplication table.
///
/// Element 0 is always the identity.  `mul(a, b)` is the table entry
/// (a, b) = a·b.  Groups built by `from_generators` compose permutations
/// right-to-left, so (a·b)(x) = a(b(x)).
class FiniteGroup {
 public:
  /// Validates closure, associativity, identity at 0 and inverses.
  static FiniteGroup from_table(std::string name,
                                const std::vector<std::vector<int>>& table,
                                std::vector<std::string> labels = {});

  int order() const noexcept { return order_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  /// g·h·g⁻¹
  int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }
  int element_order(int g) const;

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::vector<std::vector<int>> table() const;

  bool operator==(const FiniteGroup& other) const {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  FiniteGroup() = default;

  std::string name_;
  int order_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A subgroup as the sorted list of its element indices.
struct Subgroup {
  std::vector<int> elements;

  int order() const noexcept { return static_cast<int>(elements.size()); }
  bool contains(int g) const;
  bool contains(const Subgroup& other) const;

  bool operator==(const Subgroup&) const = default;
};

/// Canonical order: by size, then lexicographically by element set.
bool subgroup_less(const Subgroup& a, const Subgroup& b);

struct SubgroupClass {
  Subgroup representative;       // lexicographically smallest member
  std::vector<Subgroup> members;  // sorted with subgroup_less
};

struct GeneratorOptions {
  std::size_t size_cap = 10000;
};

/// Closure of permutation generators.  Elements are numbered breadth-first
/// by word length; within one word length they are ordered
/// lexicographically as permutations.  Labels are the permutation images.
FiniteGroup from_generators(int degree, const std::vector<Permutation>& generators,
                            std::string name = {}, GeneratorOptions options = {});

Subgroup make_subgroup(const FiniteGroup& group, std::vector<int> elements);
Subgroup generated_subgroup(const FiniteGroup& group, std::span<const int> generators);
Subgroup trivial_subgroup(const FiniteGroup& group);
Subgroup whole_group(const FiniteGroup& group);
bool is_subgroup(const FiniteGroup& group, const std::vector<int>& elements);

/// g·H·g⁻¹
Subgroup conjugate(const FiniteGroup& group, int g, const Subgroup& subgroup);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
bool are_conjugate(const FiniteGroup& group, const Subgroup& a, const Subgroup& b);

/// All subgroups by cyclic extension: start from the cyclic subgroups and
/// close under joins with cyclic subgroups.  Sorted by subgroup_less.
std::vector<Subgroup> all_subgroups(const FiniteGroup& group);

/// Every subset containing the identity, closed under multiplication.
/// Independent oracle for all_subgroups; requires order ≤ 16.
std::vector<Subgroup> all_subgroups_exhaustive(const FiniteGroup& group);

std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& group);

/// Left coset representatives of H in G.  Each coset is represented by its
/// minimal element index, and representatives are ascending, so the
/// identity coset comes first.
std::vector<int> cosets(const FiniteGroup& group, const Subgroup& subgroup);

/// Coset bookkeeping for G/H: `coset_of[g]` is the position of gH in
/// `representatives`.
struct CosetTable {
  std::vector<int> representatives;
  std::vector<int> coset_of;

  int size() const noexcept { return static_cast<int>(representatives.size()); }
};
CosetTable coset_table(const FiniteGroup& group, const Subgroup& subgroup);

/// Minimal representatives of the double cosets K\G/H, ascending.
std::vector<int> double_cosets(const FiniteGroup& group, const Subgroup& left,
                               const Subgroup& right);

/// Double cosets K\A/H for K, H ≤ A ≤ G, representatives drawn from A.
std::vector<int> double_cosets_within(const FiniteGroup& group, const Subgroup& ambient,
                                      const Subgroup& left, const Subgroup& right);

Subgroup normalizer(const FiniteGroup& group, const Subgroup& subgroup);

/// A subgroup H ≤ G viewed as a group in its own right.  Elements of the
/// new group are the elements of H in ascending parent order.
struct SubgroupGroup {
  GroupPtr group;
  std::vector<int> to_parent;
  std::vector<int> from_parent;  // -1 outside H

  Subgroup to_parent_subgroup(const Subgroup& local) const;
  Subgroup from_parent_subgroup(const Subgroup& parent) const;
};
SubgroupGroup subgroup_as_group(const FiniteGroup& group, const Subgroup& subgroup);

/// Subgroups and conjugacy classes of one group, with index lookups.
///
/// `conjugator[s]` is the minimal element t with
/// subgroups[s] = t · rep(class_of[s]) · t⁻¹.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(GroupPtr group);

  const FiniteGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  const std::vector<Subgroup>& subgroups() const noexcept { return subgroups_; }
  const std::vector<SubgroupClass>& classes() const noexcept { return classes_; }
  int class_count() const noexcept { return static_cast<int>(classes_.size()); }

  /// Index of a subgroup in subgroups(); throws PreconditionError if absent.
  int index_of(const Subgroup& subgroup) const;
  int class_of(int subgroup_index) const { return class_of_[subgroup_index]; }
  int class_of(const Subgroup& subgroup) const { return class_of_[index_of(subgroup)]; }
  int conjugator(int subgroup_index) const { return conjugator_[subgroup_index]; }
  /// Index in subgroups() of the class representative.
  int representative_index(int class_index) const { return rep_index_[class_index]; }
  const Subgroup& representative(int class_index) const {
    return classes_[class_index].representative;
  }
  /// Indices of all subgroups contained in `subgroups()[index]`.
  std::vector<int> subgroups_of(int index) const;

 private:
  GroupPtr group_;
  std::vector<Subgroup> subgroups_;
  std::vector<SubgroupClass> classes_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> class_of_;
  std::vector<int> conjugator_;
  std::vector<int> rep_index_;
};

/// Reference groups shared by the tests and the CLI.
namespace fixtures {
FiniteGroup trivial();
FiniteGroup cyclic(int n);
FiniteGroup klein_four();
FiniteGroup symmetric3();
FiniteGroup dihedral(int n);  // order 2n
FiniteGroup quaternion8();
FiniteGroup alternating4();
/// C2, C3, C4, C2xC2, S3, C6, D4, Q8, A4, D6.
std::vector<FiniteGroup> acceptance_groups();
/// Lookup by name: e, C2, ..., C6, C2xC2, S3, D4, Q8, A4, D6.
FiniteGroup by_name(const std::string& name);
}  // namespace fixtures

}  // namespace eqsk
