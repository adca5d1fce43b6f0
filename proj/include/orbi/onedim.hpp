#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbi/germs.hpp"

namespace orbi {

enum class EndKind { boundary, mirror };

struct OneOrbifoldComponent {
  bool loop = false;
  std::vector<EndKind> ends;  // empty for loops, exactly two for intervals
};

/// 'a' loop, 'b' two boundary ends, 'c' one mirror end, 'd' two mirror ends.
/// Throws InputError for a loop with ends or an interval without two ends.
char classify_1_orbifold(const OneOrbifoldComponent& c);

struct ParityReport {
  std::size_t boundary_points = 0;
  bool even = true;
};

/// Throws CheckFailure("mirror_component") when a component of type c or d is present.
ParityReport boundary_parity(const std::vector<OneOrbifoldComponent>& components);

struct Index2Finding {
  bool forbidden = false;
  std::size_t index2_subgroups = 0;
  std::optional<Subgroup> witness;
  std::optional<Subspace> fixed;  // Fix(witness), nonzero
};

/// True iff some index-2 subgroup has a nonzero fixed vector. An invariant
/// complement to a fixed line always exists (average an inner product), so
/// this is the R^{n-1} + R splitting with trivial action on the R factor.
Index2Finding forbidden_index2_check(const LocalChart& chart);

struct AtlasChart {
  std::string name;
  LocalChart chart;
  std::optional<MapGerm> germ;  // candidate germ into the atlas target chart
};

struct AtlasPiece {
  std::size_t chart = 0;  // index into Atlas::charts
  Vector point;
};

struct AtlasLink {
  std::size_t from = 0;  // piece indices; the recentered chart of `from` embeds into the chart of `to`
  std::size_t to = 0;
  Matrix linear;
  Vector translate;
  std::vector<Matrix> theta_gen_images;
};

/// Finite atlas with one shared target chart (around p) for the candidate
/// germs, declared preimage pieces and declared identifications between them.
struct Atlas {
  std::vector<AtlasChart> charts;
  LocalChart target;
  Vector p;
  std::vector<AtlasPiece> pieces;
  std::vector<AtlasLink> links;
};

struct HypothesisReport {
  bool holds = true;
  std::optional<std::string> chart;  // first chart breaking it
  std::optional<Stratum> stratum;
};

/// True iff no chart has an interior singular stratum of codimension 1.
HypothesisReport no_retraction_hypothesis(const Atlas& atlas);

enum class PieceKind { boundary_end, mirror_end, arc };
std::string to_string(PieceKind k);

struct PieceModel {
  PreimageModel model;
  PieceKind kind = PieceKind::arc;
  std::size_t ports() const { return kind == PieceKind::arc ? 2 : 1; }
};

struct AssembledComponent {
  std::vector<std::size_t> pieces;
  std::size_t dangling_ports = 0;
  std::vector<EndKind> ends;  // ends found (end pieces), in piece order
  /// Set when the component is closed up (no dangling ports).
  std::optional<OneOrbifoldComponent> component;
};

struct AssemblyReport {
  std::vector<PieceModel> pieces;
  std::vector<AssembledComponent> components;
  bool closed() const;
  std::vector<OneOrbifoldComponent> closed_components() const;
};

/// Builds the preimage model of every piece (1-dimensional, regular), checks
/// every link (verified embedding, isotropy match, lift compatibility up to a
/// target element) and follows the links. Throws CheckFailure with codes
/// "inconsistent_identification", "lift_mismatch", "over_linked",
/// "not_one_dimensional", "no_germ".
AssemblyReport assemble_components(const Atlas& atlas);

struct RetractionReport {
  bool hypothesis_holds = false;
  HypothesisReport hypothesis;
  bool contradiction = false;
  std::string reason;  // "odd_boundary_count", "forced_mirror_absent", or empty
  std::size_t boundary_ends = 0;
  std::optional<AssemblyReport> assembly;
  std::vector<std::string> findings;
};

/// Validates the candidate germs (each chart must carry one; boundary charts
/// must satisfy lift(u, 0) = u), then either reports the codimension-1
/// stratum breaking the hypothesis or derives the contradiction: the
/// preimage of p has a single boundary point, so some component would be of
/// type (c), whose mirror point needs a codimension-1 stratum.
RetractionReport retraction_contradiction(const Atlas& atlas);

}  // namespace orbi
