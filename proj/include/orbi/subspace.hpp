#pragma once

#include <cstddef>
#include <vector>

#include "orbi/matrix.hpp"

namespace orbi {

/// Linear subspace of Q^n stored by its canonical reduced-echelon basis, so
/// equal subspaces compare equal regardless of how they were spanned.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace zero(std::size_t ambient) { return span(ambient, {}); }
  static Subspace full(std::size_t ambient);
  /// Column space of m.
  static Subspace column_space(const Matrix& m);
  /// {v : m v = 0}.
  static Subspace null_space(const Matrix& m);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  /// Basis vectors as rows of a dim x ambient matrix in reduced echelon form.
  const Matrix& basis_matrix() const noexcept { return basis_; }
  std::vector<Vector> basis() const;
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v (assumed contained) in the canonical basis.
  Vector coordinates(const Vector& v) const;

  Subspace intersect(const Subspace& other) const;
  Subspace operator+(const Subspace& other) const;
  /// {w : w . v = 0 for all v}; the annihilator under the standard pairing.
  Subspace annihilator() const;
  /// m(this); m must have ambient_dim() columns.
  Subspace image_under(const Matrix& m) const;
  bool is_invariant_under(const Matrix& m) const;
  /// Matrix of m restricted to this (invariant) subspace, in canonical coordinates.
  Matrix restrict(const Matrix& m) const;
  /// True iff m v = v for every v in the subspace.
  bool pointwise_fixed_by(const Matrix& m) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

struct KernelImageRank {
  Subspace kernel;
  Subspace image;
  std::size_t rank = 0;
};

KernelImageRank kernel_image_rank(const Matrix& m);

}  // namespace orbi
