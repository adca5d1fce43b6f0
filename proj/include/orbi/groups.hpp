#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "orbi/matrix.hpp"
#include "orbi/subspace.hpp"

namespace orbi {

class FiniteMatrixGroup;
using GroupPtr = std::shared_ptr<const FiniteMatrixGroup>;

constexpr std::size_t kDefaultOrderBound = 10000;

/// Finite group of invertible rational matrices. Elements are enumerated
/// breadth-first from the identity (index 0), left-multiplying by the
/// generators in the order given. The full multiplication table is stored.
class FiniteMatrixGroup {
 public:
  /// Closure of the generators. Throws InputError for non-square, wrong-size
  /// or singular generators and CheckFailure("order_bound") when the closure
  /// grows past order_bound.
  static GroupPtr generate(std::size_t dim, const std::vector<Matrix>& generators,
                           std::size_t order_bound = kDefaultOrderBound);
  static GroupPtr trivial(std::size_t dim) { return generate(dim, {}); }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t order() const noexcept { return elems_.size(); }
  const Matrix& element(std::size_t i) const { return elems_.at(i); }
  const std::vector<Matrix>& elements() const noexcept { return elems_; }
  std::size_t product(std::size_t a, std::size_t b) const { return table_[a * elems_.size() + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
  std::optional<std::size_t> index_of(const Matrix& m) const;

  /// Generator matrices as supplied (possibly repeated or the identity).
  const std::vector<Matrix>& generators() const noexcept { return gens_; }
  /// Element index of each supplied generator.
  const std::vector<std::size_t>& generator_indices() const noexcept { return gen_idx_; }
  /// For element k > 0: (generator position s, element e) with element k = gen_s * e
  /// and e enumerated before k. Homomorphisms are extended along these words.
  const std::vector<std::pair<std::size_t, std::size_t>>& spanning_words() const noexcept { return words_; }

  bool is_abelian() const;
  std::size_t element_order(std::size_t i) const;

 private:
  FiniteMatrixGroup() = default;

  std::size_t dim_ = 0;
  std::vector<Matrix> elems_;
  std::vector<Matrix> gens_;
  std::vector<std::size_t> gen_idx_;
  std::vector<std::pair<std::size_t, std::size_t>> words_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::map<Matrix, std::size_t> lookup_;
};

/// Subset of a parent group closed under products (verified on construction).
class Subgroup {
 public:
  Subgroup() = default;
  /// members: element indices of parent; sorted and deduplicated here.
  Subgroup(GroupPtr parent, std::vector<std::size_t> members);

  static Subgroup whole(const GroupPtr& g);
  static Subgroup trivial(const GroupPtr& g) { return Subgroup(g, {0}); }
  /// Smallest subgroup containing the given parent elements.
  static Subgroup generated_by(const GroupPtr& g, const std::vector<std::size_t>& elems);

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool contains(std::size_t parent_index) const;
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == parent_->order(); }
  bool is_normal() const;
  std::vector<Matrix> matrices() const;
  Subgroup intersect(const Subgroup& other) const;
  /// g H g^-1.
  Subgroup conjugate(std::size_t g) const;
  /// The subgroup as a standalone matrix group, generated by a small
  /// generating set of members. Element order of the result differs from
  /// member order; match by matrix.
  GroupPtr as_group() const;
  /// A small generating set (parent indices).
  std::vector<std::size_t> small_generating_set() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  GroupPtr parent_;
  std::vector<std::size_t> members_;
};

/// Verified homomorphism between two finite matrix groups.
class GroupHom {
 public:
  const GroupPtr& source() const noexcept { return source_; }
  const GroupPtr& target() const noexcept { return target_; }
  std::size_t operator()(std::size_t source_index) const { return map_.at(source_index); }
  const std::vector<std::size_t>& map() const noexcept { return map_; }
  bool is_injective() const;
  /// Image of each source generator as a target matrix.
  std::vector<Matrix> generator_images() const;

 private:
  friend GroupHom verify_homomorphism(const GroupPtr&, const GroupPtr&, const std::vector<std::size_t>&);
  GroupPtr source_;
  GroupPtr target_;
  std::vector<std::size_t> map_;
};

/// Extends generator images (target element indices, one per source
/// generator) to a homomorphism and checks it exhaustively. Throws
/// CheckFailure("not_a_homomorphism") with a witness pair on failure.
GroupHom verify_homomorphism(const GroupPtr& source, const GroupPtr& target,
                             const std::vector<std::size_t>& generator_images);
/// Same, with images given as target matrices (matched by exact equality).
GroupHom verify_homomorphism(const GroupPtr& source, const GroupPtr& target,
                             const std::vector<Matrix>& generator_images);
/// The homomorphism sending everything to the identity.
GroupHom trivial_homomorphism(const GroupPtr& source, const GroupPtr& target);
/// eta * hom * eta^-1 for a target element eta.
GroupHom conjugate_homomorphism(const GroupHom& hom, std::size_t eta);

Subgroup kernel_of(const GroupHom& hom);
Subgroup image_of(const GroupHom& hom);

/// Parent / normal subgroup, realized on cosets.
class QuotientGroup {
 public:
  const GroupPtr& parent() const noexcept { return normal_.parent(); }
  const Subgroup& normal() const noexcept { return normal_; }
  std::size_t order() const noexcept { return cosets_.size(); }
  const std::vector<std::vector<std::size_t>>& cosets() const noexcept { return cosets_; }
  std::size_t coset_of(std::size_t parent_index) const { return coset_of_.at(parent_index); }
  std::size_t product(std::size_t a, std::size_t b) const { return table_[a * cosets_.size() + b]; }
  /// Index of the identity coset (always 0).
  static constexpr std::size_t identity() { return 0; }

 private:
  friend QuotientGroup quotient(const Subgroup& normal);
  Subgroup normal_;
  std::vector<std::vector<std::size_t>> cosets_;
  std::vector<std::size_t> coset_of_;
  std::vector<std::size_t> table_;
};

/// Throws CheckFailure("not_normal") with a witness when the subgroup is not normal.
QuotientGroup quotient(const Subgroup& normal);

/// {v : g v = v for all g in h}.
Subspace fixed_subspace(const Subgroup& h);
Subspace fixed_subspace(const FiniteMatrixGroup& g);
/// Elements of h acting as the identity on every vector of s.
Subgroup pointwise_stabilizer(const Subgroup& h, const Subspace& s);
/// Elements of g fixing the vector v.
Subgroup stabilizer(const GroupPtr& g, const Vector& v);

/// Every subgroup of index exactly 2, as kernels of surjections onto Z/2.
std::vector<Subgroup> index2_subgroups(const GroupPtr& g);

}  // namespace orbi
