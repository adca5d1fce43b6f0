#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "orbi/groups.hpp"

namespace orbi {

/// Linear local model: R^n (or the half-space x_n >= 0 when boundary is set)
/// with a finite linear group action.
struct LocalChart {
  std::size_t dim = 0;
  GroupPtr group;
  bool boundary = false;
};

/// Throws InputError for malformed generators and CheckFailure("boundary")
/// when a boundary chart has an element whose last row is not (0, ..., 0, 1).
LocalChart build_chart(std::size_t dim, const std::vector<Matrix>& generators, bool boundary,
                       std::size_t order_bound = kDefaultOrderBound);
LocalChart chart_from_group(const GroupPtr& group, bool boundary);

/// Block-diagonal product. The boundary factor (at most one) is placed last
/// so the boundary coordinate stays the last coordinate.
LocalChart product_chart(const LocalChart& a, const LocalChart& b);

bool in_domain(const LocalChart& chart, const Vector& point);
bool on_boundary(const LocalChart& chart, const Vector& point);

/// {g : g point = point}. Throws InputError for points outside the domain.
Subgroup isotropy_at(const LocalChart& chart, const Vector& point);

struct Stratum {
  Subgroup isotropy;   // exact isotropy of every point of the stratum
  Subspace fixed;      // Fix(isotropy)
  std::size_t dim = 0;
  std::size_t codim = 0;
  bool boundary = false;  // contained in {x_n = 0}
  bool singular = false;
  std::size_t orbit_class = 0;  // strata in the same class are moved onto each other by the group
  /// A point of the stratum (not on any smaller stratum).
  Vector sample;
};

struct StrataReport {
  std::vector<Stratum> strata;  // decreasing dimension, regular strata included
  /// Pointers into this report; not callable on a temporary.
  std::vector<const Stratum*> singular() const&;
  std::vector<const Stratum*> singular() const&& = delete;
};

StrataReport stratify(const LocalChart& chart);
bool has_interior_codim1_stratum(const LocalChart& chart);
/// The first interior singular stratum of codimension 1, if any.
std::optional<Stratum> interior_codim1_stratum(const LocalChart& chart);

struct SuborbifoldLocalModel {
  LocalChart chart;
  Subspace subspace;
  Subgroup lambda;          // in the chart group
  Subgroup omega;           // in the chart group
  GroupPtr lambda_group;    // lambda as a standalone group
  QuotientGroup intrinsic;  // lambda_group / omega
  bool full = false;
};

/// Throws CheckFailure("not_invariant") with the witness (gamma, v, gamma v).
SuborbifoldLocalModel suborbifold_model(const LocalChart& chart, const Subspace& subspace, const Subgroup& lambda);

/// Subgroup of g made of the given matrices (each must be an element).
Subgroup subgroup_from_matrices(const GroupPtr& g, const std::vector<Matrix>& ms);

struct ChartEmbedding {
  LocalChart source;
  LocalChart target;
  Matrix linear;
  Vector translate;
  GroupHom theta;

  Vector apply(const Vector& y) const { return linear * y + translate; }
};

/// Checks injectivity of the linear part, injectivity of theta, exact
/// equivariance L(gamma y) + t = theta(gamma)(L y + t), domain compatibility,
/// and isotropy consistency at sampled rational points. Failures throw
/// CheckFailure with a witness.
ChartEmbedding verify_embedding(const LocalChart& source, const LocalChart& target, const Matrix& linear,
                                const Vector& translate, const std::vector<Matrix>& theta_gen_images);

}  // namespace orbi
