#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbi/germs.hpp"
#include "orbi/onedim.hpp"
#include "orbi/serialize.hpp"

namespace orbi {

inline constexpr const char* kVersion = ORBI_VERSION;

// Exit codes of every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitCheck = 2;

/// {"dim": n, "boundary": bool, "generators": [matrix, ...]}; "boundary" and
/// "generators" may be omitted.
LocalChart parse_chart(const json& j, const std::string& path);
json chart_to_json(const LocalChart& c);

struct GermScenario {
  std::string name;
  LocalChart source;
  LocalChart target;
  std::vector<Matrix> theta_gen_images;
  MultiPoly lift;
  Vector base_point;
  Vector p;
  bool p_given = false;
  std::vector<Vector> preimage_lifts;
  std::optional<std::vector<CriticalEntry>> critical_values;
};

/// theta_gen_images may be omitted when the target group is trivial. Without
/// "p" the scenario analyzes p = lift(base_point) with the base point as its
/// only preimage lift.
GermScenario parse_germ_scenario(const json& j);
MapGerm build_scenario_germ(const GermScenario& s);

/// {"kind": "atlas", "target": chart, "p": [..], "charts": [{"name", "chart",
/// "germ": {"lift", "theta_gen_images"}}], "pieces": [{"chart": name,
/// "point"}], "links": [{"from", "to", "linear", "translate",
/// "theta_gen_images"}]}. Germs are centered at the origin.
Atlas parse_atlas(const json& j);

/// {"components": [{"shape": "loop"|"interval", "ends": [...]}]}, a bare
/// array of components, or a single component.
std::vector<OneOrbifoldComponent> parse_components(const json& j);

/// Scenario kind: explicit "kind", else inferred from the fields present.
std::string scenario_kind(const json& j);

struct Outcome {
  json report;
  int exit_code = kExitOk;
  std::vector<std::string> summary;  // human-readable lines
};

struct SardFlags {
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::pair<double, double>>> box;
};

// Commands. None of them throw for bad input or failed checks: the error is
// recorded in the report and mapped to the exit code. Reports carry the tool
// version and (for sard) the seed.
Outcome cmd_analyze(const json& scenario);
Outcome cmd_sard(const json& scenario, const SardFlags& flags = {});
Outcome cmd_strata(const json& scenario);
Outcome cmd_obstruct(const json& scenario);
Outcome cmd_classify1(const json& scenario);
Outcome cmd_retraction(const json& scenario);

/// Reads and parses a JSON file; InputError on failure.
json load_json_file(const std::string& path);

// Report fragments, shared with the bindings.
json strata_to_json(const StrataReport& r);
json projection_to_json(const InvariantProjection& p);
json preimage_to_json(const PreimageModel& m);
json obstruction_to_json(const ObstructionCertificate& c);
json sard_to_json(const SardReport& r, const SardOptions& opts);
json retraction_to_json(const RetractionReport& r);
json assembly_to_json(const AssemblyReport& r);

}  // namespace orbi
