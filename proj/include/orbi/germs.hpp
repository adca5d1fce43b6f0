#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbi/charts.hpp"
#include "orbi/multipoly.hpp"
#include "orbi/representation.hpp"

namespace orbi {

/// A complete orbifold map germ at one chart: an equivariant polynomial lift
/// together with the homomorphism theta between the chart groups.
struct MapGerm {
  LocalChart source;
  LocalChart target;
  MultiPoly lift;
  GroupHom theta;
  Vector base_point;  // fixed by the source group
};

/// Verifies lift(gamma y) - theta(gamma) lift(y) == 0 as a polynomial identity
/// for every gamma. Throws CheckFailure("not_equivariant") with gamma and the
/// residual, CheckFailure("base_not_fixed") / ("domain") for a bad base
/// point, and InputError for dimension mismatches.
MapGerm build_germ(const LocalChart& source, const LocalChart& target, const MultiPoly& lift, const GroupHom& theta,
                   const Vector& base_point);
MapGerm build_germ(const LocalChart& source, const LocalChart& target, const MultiPoly& lift,
                   const std::vector<Matrix>& theta_gen_images, const Vector& base_point);

struct PointRank {
  Vector point;
  std::size_t rank = 0;
  std::optional<std::size_t> boundary_rank;  // rank of the restriction to {x_n = 0}, boundary points only
};

struct RegularityReport {
  bool regular = true;
  std::vector<PointRank> points;
};

/// Rank of the Jacobian at every supplied preimage point. An empty list is
/// regular by convention. Throws InputError("/preimage_lifts/i") when a point
/// does not map to p or lies outside the domain.
RegularityReport is_regular_value(const MapGerm& germ, const Vector& p, const std::vector<Vector>& preimage_lifts);

/// Moves the chart center to `point`: coordinates translated, the group
/// restricted to the isotropy of the point, theta restricted accordingly.
/// The target chart is unchanged. An interior point of a boundary chart
/// gives a chart without boundary.
MapGerm recenter(const MapGerm& germ, const Vector& point);

struct PreimageModel {
  MapGerm germ;     // centered at the preimage point
  Vector center;    // the preimage point in the original chart coordinates
  bool recentered = false;
  Vector p;
  Matrix jacobian;
  Subspace kernel;  // K
  Subgroup g;       // elements acting as the identity on K
  QuotientGroup gamma_s;
  SuborbifoldLocalModel suborbifold;
  std::size_t dim = 0;
  bool on_boundary = false;
  std::optional<Subspace> boundary_kernel;  // K meet {x_n = 0}
};

/// Throws CheckFailure("not_regular") when the Jacobian at the point is not
/// surjective, InputError when the point is not a preimage of p.
PreimageModel preimage_model(const MapGerm& germ, const Vector& p, const Vector& point);
/// Boundary variant: the source chart must have boundary; at a boundary point
/// the restriction to the boundary hyperplane must also be regular
/// (CheckFailure("boundary_not_regular")).
PreimageModel preimage_model_boundary(const MapGerm& germ, const Vector& p, const Vector& point);

struct InvariantProjection {
  Subgroup n;                      // ker theta
  std::vector<Matrix> a_gamma;     // gamma - I, one per member of n (same order)
  Matrix average;                  // A
  Matrix projection;               // A_x = -A
  Subspace k;                      // kernel of the Jacobian at the base point
  Subspace kernel;                 // ker A_x
  Subspace image;                  // im A_x
};

/// Builds A_x at the germ's base point and re-checks every identity it must
/// satisfy; a failure throws CheckFailure("projection").
InvariantProjection invariant_projection(const MapGerm& germ);

struct CocycleReport {
  std::size_t pairs_checked = 0;
  bool all_hold = true;
  std::optional<std::pair<Matrix, Matrix>> failing_pair;
};

CocycleReport cocycle_identities(const InvariantProjection& proj);

struct FaithfulnessReport {
  std::size_t n_order = 0;
  std::size_t g_order = 0;
  std::size_t intersection_order = 0;
  bool injective = false;
};

FaithfulnessReport faithfulness_check(const PreimageModel& model);

struct RealTargetReport {
  bool gamma_s_equals_gamma = false;
  Subspace fixed_line;  // ker A_x
  bool fixed_line_pointwise_fixed = false;
  bool image_equals_k = false;
  std::size_t stratum_dim = 0;  // dimension of the stratum through the point
  bool group_trivial = true;
};

/// For germs into (R, trivial group): T = ker A_x (+) im A_x = R (+) K.
/// Throws InputError when the target is not 1-dimensional with trivial group.
RealTargetReport real_target_structure(const PreimageModel& model);

enum class Verdict { possible, impossible, unknown };
std::string to_string(Verdict v);

struct ObstructionCertificate {
  Verdict verdict = Verdict::unknown;
  std::string reason;  // "a", "b", "dimension", "witness", "no_witness"
  std::size_t n_order = 0;
  std::size_t kernel_dim_needed = 0;
  std::optional<InvariantSubspaceResult> subspace_search;
  std::optional<MultiPoly> witness_lift;
  std::string detail;
};

/// Can p = center be a regular value of a germ with this theta at the chart
/// centers? "possible" always comes with a verified witness lift (an
/// equivariant surjective linear map, or the supplied candidate).
ObstructionCertificate obstruction_certificate(const LocalChart& source, const LocalChart& target,
                                               const GroupHom& theta,
                                               const std::optional<MultiPoly>& candidate = std::nullopt);

struct ReplacementReport {
  MapGerm companion;
  bool kernels_equal = false;
  bool n_equal = false;
};

/// Companion germ with lift eta * f and theta conjugated by eta.
ReplacementReport lift_replacement_invariance(const MapGerm& germ, std::size_t eta);

// Sard sampler.

struct CriticalEntry {
  Vector value;
  Vector lift;
};

struct SardOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  std::vector<std::pair<double, double>> box;  // one interval per target coordinate
  long snap_denominator = 1000000;
  /// Critical values with a preimage lift each; used when the lift is not
  /// separable (see sard_sample).
  std::optional<std::vector<CriticalEntry>> table;
};

struct SardReport {
  std::size_t samples = 0;
  std::size_t regular = 0;
  double regular_fraction = 0.0;
  std::vector<Vector> critical_values;  // distinct, sorted
  std::string method;                   // "separable" or "table"
};

/// Samples target points uniformly in the box (snapped to k / denominator)
/// and classifies each exactly. Separable lifts (every target coordinate a
/// polynomial in at most one variable, no variable shared) are solved with
/// real-root counting; other lifts need a table of critical values, each
/// verified. Throws InputError when neither applies.
SardReport sard_sample(const MapGerm& germ, const SardOptions& opts);

bool is_separable(const MultiPoly& lift);

}  // namespace orbi
