#include "orbi/subspace.hpp"

#include <stdexcept>

namespace orbi {

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors) {
  Matrix m(vectors.size(), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient) throw std::invalid_argument("span: vector length != ambient dimension");
    for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vectors[i][j];
  }
  Echelon e = rref(std::move(m));
  Subspace s;
  s.ambient_ = ambient;
  s.pivots_ = e.pivots;
  s.basis_ = Matrix(e.pivots.size(), ambient);
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < ambient; ++j) s.basis_(i, j) = e.reduced(i, j);
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < ambient; ++i) vs.push_back(unit_vector(ambient, i));
  return span(ambient, vs);
}

Subspace Subspace::column_space(const Matrix& m) {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return span(m.rows(), cols);
}

Subspace Subspace::null_space(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return span(m.cols(), basis);
}

std::vector<Vector> Subspace::basis() const {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) out.push_back(basis_.row(i));
  return out;
}

Vector Subspace::coordinates(const Vector& v) const {
  Vector c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v.at(pivots_[i]);
  return c;
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("contains: vector length != ambient dimension");
  // In echelon coordinates the candidate combination is read off the pivots.
  Vector residual = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    const Rational c = v[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ambient_; ++j) residual[j] -= c * basis_(i, j);
  }
  return is_zero(residual);
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Subspace Subspace::annihilator() const { return null_space(basis_); }

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("intersect: ambient mismatch");
  // U ∩ W = null space of the stacked annihilator bases.
  Subspace a = annihilator(), b = other.annihilator();
  Matrix stacked(a.dim() + b.dim(), ambient_);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) stacked(i, j) = a.basis_(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) stacked(a.dim() + i, j) = b.basis_(i, j);
  return null_space(stacked);
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("sum: ambient mismatch");
  auto vs = basis();
  auto ws = other.basis();
  vs.insert(vs.end(), ws.begin(), ws.end());
  return span(ambient_, vs);
}

Subspace Subspace::image_under(const Matrix& m) const {
  std::vector<Vector> imgs;
  for (std::size_t i = 0; i < dim(); ++i) imgs.push_back(m * basis_.row(i));
  return span(m.rows(), imgs);
}

bool Subspace::is_invariant_under(const Matrix& m) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (!contains(m * basis_.row(i))) return false;
  return true;
}

Matrix Subspace::restrict(const Matrix& m) const {
  Matrix r(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    Vector img = m * basis_.row(j);
    if (!contains(img)) throw std::invalid_argument("restrict: subspace not invariant");
    Vector c = coordinates(img);
    for (std::size_t i = 0; i < dim(); ++i) r(i, j) = c[i];
  }
  return r;
}

bool Subspace::pointwise_fixed_by(const Matrix& m) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    Vector b = basis_.row(i);
    if (m * b != b) return false;
  }
  return true;
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  if (a.dim() != b.dim()) return a.dim() > b.dim();
  return a.basis_ < b.basis_;
}

KernelImageRank kernel_image_rank(const Matrix& m) {
  KernelImageRank r;
  r.kernel = Subspace::null_space(m);
  r.image = Subspace::column_space(m);
  r.rank = r.image.dim();
  return r;
}

}  // namespace orbi
