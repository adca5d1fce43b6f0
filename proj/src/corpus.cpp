#include "orbi/corpus.hpp"

#include <algorithm>

#include "orbi/error.hpp"

namespace orbi {

namespace {

using Ints = std::vector<int>;

json mat(std::initializer_list<Ints> rows) {
  json m = json::array();
  for (const auto& r : rows) {
    json row = json::array();
    for (int v : r) row.push_back(std::to_string(v));
    m.push_back(row);
  }
  return m;
}

json diag(const Ints& d) {
  json m = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < d.size(); ++k) row.push_back(i == k ? std::to_string(d[i]) : "0");
    m.push_back(row);
  }
  return m;
}

json identity(int n) { return diag(Ints(n, 1)); }

json vec(std::initializer_list<const char*> xs) {
  json v = json::array();
  for (const char* x : xs) v.push_back(x);
  return v;
}

json chart(int dim, json gens = json::array(), bool boundary = false) {
  return {{"dim", dim}, {"boundary", boundary}, {"generators", std::move(gens)}};
}

json term(const char* coef, Ints exps) { return {{"coef", coef}, {"exps", exps}}; }

// x_i in n variables.
json var(int n, int i) {
  Ints e(n, 0);
  e[i] = 1;
  return json::array({term("1", e)});
}

json lift(std::initializer_list<json> comps) {
  json l = json::array();
  for (const auto& c : comps) l.push_back(c);
  return l;
}

Expectation eq(std::string ptr, json v) { return {std::move(ptr), "eq", std::move(v)}; }
Expectation ge(std::string ptr, json v) { return {std::move(ptr), "ge", std::move(v)}; }

const json kRefl2 = diag({1, -1});
const json kC3 = mat({{0, -1}, {1, -1}});
const json kZ4 = mat({{0, -1}, {1, 0}});
const json kMinusI2 = diag({-1, -1});
const json kZ2 = mat({{-1}});

json germ(const std::string& name, json source, json target, json l) {
  return {{"kind", "germ"}, {"name", name}, {"source", std::move(source)}, {"target", std::move(target)},
          {"lift", std::move(l)}};
}

json circle_atlas(const std::string& name, const json& gen, json l, json pieces, json links) {
  return {{"kind", "atlas"},
          {"name", name},
          {"target", chart(1)},
          {"p", vec({"1"})},
          {"charts", json::array({{{"name", "cone"}, {"chart", chart(2, json::array({gen}))}, {"germ", {{"lift", l}}}}})},
          {"pieces", std::move(pieces)},
          {"links", std::move(links)}};
}

// Interval atlas over a point target: end chart, arc chart, end chart.
json interval_atlas(const std::string& name, const json& left, const json& right) {
  json empty_lift = json::array();
  return {{"kind", "atlas"},
          {"name", name},
          {"target", chart(0)},
          {"p", json::array()},
          {"charts", json::array({{{"name", "left"}, {"chart", left}, {"germ", {{"lift", empty_lift}}}},
                                  {{"name", "arc"}, {"chart", chart(1)}, {"germ", {{"lift", empty_lift}}}},
                                  {{"name", "right"}, {"chart", right}, {"germ", {{"lift", empty_lift}}}}})},
          {"pieces", json::array({{{"chart", "left"}, {"point", vec({"0"})}},
                                  {{"chart", "arc"}, {"point", vec({"0"})}},
                                  {{"chart", "right"}, {"point", vec({"0"})}}})},
          {"links", json::array({{{"from", 1}, {"to", 0}, {"linear", mat({{1}})}, {"translate", vec({"1/2"})}},
                                 {{"from", 1}, {"to", 2}, {"linear", mat({{-1}})}, {"translate", vec({"1/2"})}}})}};
}

// Closed disk modulo -I near a boundary point: a boundary chart, an interior
// arc chart next to it and the cone chart, which carries the candidate.
json disk_atlas(const std::string& name, std::optional<json> cone_lift) {
  json charts = json::array({{{"name", "edge"}, {"chart", chart(2, json::array(), true)}, {"germ", {{"lift", lift({var(2, 0)})}}}},
                             {{"name", "collar"}, {"chart", chart(2)}, {"germ", {{"lift", lift({var(2, 1)})}}}}});
  if (cone_lift)
    charts.push_back({{"name", "cone"}, {"chart", chart(2, json::array({kMinusI2}))}, {"germ", {{"lift", *cone_lift}}}});
  return {{"kind", "atlas"},
          {"name", name},
          {"target", chart(1)},
          {"p", vec({"1/2"})},
          {"charts", charts},
          {"pieces", json::array({{{"chart", "edge"}, {"point", vec({"1/2", "0"})}},
                                  {{"chart", "collar"}, {"point", vec({"0", "1/2"})}}})},
          {"links", json::array({{{"from", 1}, {"to", 0}, {"linear", mat({{0, 1}, {-1, 0}})},
                                  {"translate", vec({"1/2", "1/2"})}}})}};
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> c;
  auto add = [&](std::string name, std::vector<std::string> anchors, std::string command, json scenario,
                 int exit_code, std::vector<Expectation> expect) {
    scenario["name"] = name;
    c.push_back({std::move(name), std::move(anchors), std::move(command), std::move(scenario), exit_code,
                 std::move(expect)});
  };
  const std::vector<std::string> germ_anchors = {"preimage", "projection", "faithfulness", "replacement"};

  // Germs.
  add("reflection-line", germ_anchors, "analyze", germ("", chart(2, json::array({kRefl2})), chart(1), lift({var(2, 0)})),
      kExitOk,
      {eq("/result/projection/a_x", mat({{0, 0}, {0, 1}})), eq("/result/preimages/0/gamma_s_order", 2),
       eq("/result/preimages/0/dim", 1), eq("/result/preimages/0/g_order", 1)});
  {
    json s = germ("", chart(1, json::array({kZ2})), chart(1), lift({json::array({term("1", {2})})}));
    s["p"] = vec({"0"});
    s["preimage_lifts"] = json::array({vec({"0"})});
    add("Z2-square", {"preimage", "regular"}, "analyze", s, kExitCheck, {eq("/error/code", "not_regular")});
    s["p"] = vec({"-1"});
    s["preimage_lifts"] = json::array();
    add("Z2-square-outside-image", {"preimage", "regular"}, "analyze", s, kExitOk,
        {eq("/result/regularity/regular", true), eq("/result/preimages", json::array())});
  }
  {
    json s = germ("", chart(1, json::array({kZ2})), chart(1, json::array({kZ2})), lift({var(1, 0)}));
    s["theta_gen_images"] = json::array({kZ2});
    add("Q-identity", germ_anchors, "analyze", s, kExitOk,
        {eq("/result/projection/n_order", 1), eq("/result/preimages/0/gamma_s_order", 1),
         eq("/result/preimages/0/dim", 0), eq("/result/projection/a_x", mat({{0}}))});
  }
  {
    json s = germ("", chart(2, json::array({diag({-1, 1}), kRefl2})), chart(1, json::array({kZ2})), lift({var(2, 0)}));
    s["theta_gen_images"] = json::array({kZ2, mat({{1}})});
    add("QxQ-to-Q", germ_anchors, "analyze", s, kExitOk,
        {eq("/result/projection/n_order", 2), eq("/result/projection/a_x", mat({{0, 0}, {0, 1}})),
         eq("/result/preimages/0/gamma_s_order", 2), eq("/result/preimages/0/g_order", 2)});
  }
  {
    json q = json::array({term("1", {2, 0}), term("-1", {1, 1}), term("1", {0, 2})});
    json s = germ("", chart(2, json::array({kC3})), chart(1), lift({q}));
    s["p"] = vec({"1"});
    s["preimage_lifts"] = json::array({vec({"1", "0"}), vec({"1", "1"}), vec({"0", "-1"})});
    add("C3-norm-level", germ_anchors, "analyze", s, kExitOk,
        {eq("/result/projection/a_x", identity(2)), eq("/result/preimages/2/dim", 1),
         eq("/result/preimages/1/gamma_s_order", 1)});
  }
  {
    json s = germ("", chart(2, json::array({kZ4})), chart(1),
                  lift({json::array({term("1", {2, 0}), term("1", {0, 2})})}));
    s["p"] = vec({"1"});
    s["preimage_lifts"] = json::array({vec({"1", "0"}), vec({"3/5", "4/5"})});
    add("Z4-norm-level", germ_anchors, "analyze", s, kExitOk,
        {eq("/result/preimages/1/kernel/basis", json::array({vec({"1", "-3/4"})})),
         eq("/result/projection/n_order", 4)});
  }
  add("D4-height", germ_anchors, "analyze",
      germ("", chart(3, json::array({mat({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}), diag({1, -1, 1})})), chart(1),
           lift({var(3, 2)})),
      kExitOk,
      {eq("/result/projection/n_order", 8), eq("/result/projection/a_x", diag({1, 1, 0})),
       eq("/result/preimages/0/gamma_s_order", 8), eq("/result/preimages/0/g_order", 1)});
  {
    json s = germ("", chart(4, json::array({diag({-1, 1, 1, 1}), diag({1, -1, 1, 1}), diag({1, 1, -1, 1})})),
                  chart(2, json::array({diag({-1, 1})})), lift({var(4, 0), var(4, 3)}));
    s["theta_gen_images"] = json::array({diag({-1, 1}), identity(2), identity(2)});
    add("Z2cubed-4d", germ_anchors, "analyze", s, kExitOk,
        {eq("/result/projection/n_order", 4), eq("/result/preimages/0/gamma_s_order", 4),
         eq("/result/preimages/0/g_order", 2), eq("/result/projection/a_x", diag({0, 1, 1, 0}))});
  }
  {
    json s = germ("", chart(1), chart(1), lift({json::array({term("1", {1}), term("1", {2})})}));
    s["p"] = vec({"0"});
    s["preimage_lifts"] = json::array({vec({"0"}), vec({"-1"})});
    add("trivial-quadratic", germ_anchors, "analyze", s, kExitOk,
        {eq("/result/preimages/1/dim", 0), eq("/result/preimages/1/recentered", true)});
  }
  add("swap-sum", germ_anchors, "analyze",
      germ("", chart(2, json::array({mat({{0, 1}, {1, 0}})})), chart(1),
           lift({json::array({term("1", {1, 0}), term("1", {0, 1})})})),
      kExitOk,
      {eq("/result/projection/a_x", json::array({vec({"1/2", "-1/2"}), vec({"-1/2", "1/2"})})),
       eq("/result/preimages/0/gamma_s_order", 2)});
  add("cyclic-sum-3d", germ_anchors, "analyze",
      germ("", chart(3, json::array({mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})})), chart(1),
           lift({json::array({term("1", {1, 0, 0}), term("1", {0, 1, 0}), term("1", {0, 0, 1})})})),
      kExitOk, {eq("/result/preimages/0/gamma_s_order", 3), eq("/result/preimages/0/dim", 2)});
  {
    json s = germ("", chart(2, json::array({diag({-1, 1})}), true), chart(1, json::array({kZ2})), lift({var(2, 0)}));
    s["theta_gen_images"] = json::array({kZ2});
    add("halfplane-boundary", germ_anchors, "analyze", s, kExitOk,
        {eq("/result/preimages/0/on_boundary", true), eq("/result/preimages/0/gamma_s_order", 1),
         eq("/result/preimages/0/g_order", 2), eq("/result/preimages/0/boundary_kernel/dim", 0)});
  }
  {
    json s = germ("", chart(4, json::array({mat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}})})),
                  chart(2, json::array({diag({-1, 1})})), lift({var(4, 2), var(4, 3)}));
    s["theta_gen_images"] = json::array({diag({-1, 1})});
    add("Z4-rotation-4d", germ_anchors, "analyze", s, kExitOk,
        {eq("/result/projection/n_order", 2), eq("/result/preimages/0/gamma_s_order", 4),
         eq("/result/projection/a_x", diag({1, 1, 0, 0}))});
  }
  {
    json s = germ("", chart(2, json::array({kMinusI2})), chart(1), lift({json::array({term("1", {1, 1})})}));
    s["p"] = vec({"1"});
    s["preimage_lifts"] = json::array({vec({"1", "1"}), vec({"-1", "-1"})});
    add("cone-product-level", germ_anchors, "analyze", s, kExitOk,
        {eq("/result/preimages/0/gamma_s_order", 1), eq("/result/preimages/1/isotropy_order", 1)});
  }
  add("not-equivariant", {"equivariance"}, "analyze",
      germ("", chart(1, json::array({kZ2})), chart(1), lift({var(1, 0)})), kExitCheck,
      {eq("/error/code", "not_equivariant")});
  add("malformed-rational", {"input"}, "analyze",
      germ("", chart(1), chart(1), json::array({json::array({term("1/0", {1})})})), kExitInput,
      {eq("/error/path", "/lift/0/0/coef")});
  {
    json s = germ("", chart(1, json::array({kZ2})), chart(1), lift({json::array({term("1", {2})})}));
    s["base_point"] = vec({"1"});
    add("base-not-fixed", {"equivariance"}, "analyze", s, kExitCheck, {eq("/error/code", "base_not_fixed")});
  }

  // Charts, strata and suborbifolds.
  add("Q-strata", {"strata"}, "strata", {{"kind", "chart"}, {"chart", chart(1, json::array({kZ2}))}}, kExitOk,
      {eq("/result/strata/singular_dims", json::array({0})), eq("/result/forbidden_index2/forbidden", true)});
  add("QxQ-strata", {"strata"}, "strata",
      {{"kind", "chart"}, {"chart", chart(2, json::array({diag({-1, 1}), kRefl2}))}}, kExitOk,
      {eq("/result/strata/singular_count", 3), eq("/result/strata/singular_dims", json::array({1, 1, 0})),
       eq("/result/interior_codim1_stratum", true)});
  add("QxQ-suborbifolds", {"suborbifold", "strata"}, "analyze",
      {{"kind", "chart"},
       {"chart", chart(2, json::array({diag({-1, 1}), kRefl2}))},
       {"suborbifolds", json::array({{{"basis", json::array({vec({"1", "0"})})}},
                                     {{"basis", json::array({vec({"0", "1"})})}},
                                     {{"basis", json::array({vec({"1", "1"})})},
                                      {"lambda", json::array({identity(2), kMinusI2})}}})},
       {"isotropy_points", json::array({vec({"0", "0"}), vec({"1", "0"}), vec({"1", "1"})})}},
      kExitOk,
      {eq("/result/suborbifolds/0/full", true), eq("/result/suborbifolds/1/full", true),
       eq("/result/suborbifolds/2/full", false), eq("/result/suborbifolds/2/intrinsic_order", 2),
       eq("/result/isotropy/1/isotropy/order", 2)});
  add("circle-at-axis", {"suborbifold", "embedding"}, "analyze",
      {{"kind", "chart"},
       {"chart", chart(2, json::array({kRefl2}))},
       {"suborbifolds", json::array({{{"basis", json::array({vec({"1", "0"})})}, {"lambda", json::array({identity(2)})}}})},
       {"embeddings", json::array({{{"target", chart(2, json::array({diag({-1, 1}), kRefl2}))},
                                    {"linear", identity(2)},
                                    {"translate", vec({"1", "0"})},
                                    {"theta_gen_images", json::array({kRefl2})}}})}},
      kExitOk, {eq("/result/suborbifolds/0/full", false), eq("/result/suborbifolds/0/intrinsic_order", 1)});
  add("C3-strata", {"strata"}, "strata", {{"kind", "chart"}, {"chart", chart(2, json::array({kC3}))}}, kExitOk,
      {eq("/result/strata/singular_dims", json::array({0})), eq("/result/forbidden_index2/forbidden", false),
       eq("/result/interior_codim1_stratum", false)});

  // Obstructions.
  add("obstruct-Z2-line", {"obstruction"}, "obstruct",
      {{"source", chart(1, json::array({kZ2}))}, {"target", chart(1)}}, kExitOk,
      {eq("/result/verdict", "impossible"), eq("/result/reason", "a")});
  add("obstruct-Z2xZ2-plane", {"obstruction"}, "obstruct",
      {{"source", chart(2, json::array({diag({-1, 1}), kRefl2}))}, {"target", chart(2)}}, kExitOk,
      {eq("/result/verdict", "impossible"), eq("/result/reason", "a")});
  add("obstruct-C3", {"obstruction"}, "obstruct", {{"source", chart(2, json::array({kC3}))}, {"target", chart(1)}},
      kExitOk,
      {eq("/result/verdict", "impossible"), eq("/result/reason", "b"),
       eq("/result/subspace_search/status", "certified none")});
  add("obstruct-reflection", {"obstruction"}, "obstruct",
      {{"source", chart(2, json::array({kRefl2}))}, {"target", chart(1)}}, kExitOk,
      {eq("/result/verdict", "possible"), eq("/result/witness_lift", lift({var(2, 0)}))});

  // Sard.
  {
    json s = germ("", chart(1, json::array({kZ2})), chart(1), lift({json::array({term("1", {2})})}));
    s["sard"] = {{"samples", 10000}, {"seed", 42}, {"box", json::array({vec({"-2", "2"})})}};
    add("sard-square", {"sard"}, "sard", s, kExitOk,
        {ge("/result/regular_fraction", 0.999), eq("/result/method", "separable")});
  }
  {
    json s = germ("", chart(1), chart(1), lift({json::array()}));
    s["sard"] = {{"samples", 10000}, {"seed", 7}, {"box", json::array({vec({"-1", "1"})})}};
    add("sard-constant", {"sard"}, "sard", s, kExitOk, {ge("/result/regular_fraction", 0.999)});
  }
  {
    json s = germ("", chart(2, json::array({kRefl2})), chart(1), lift({var(2, 0)}));
    s["sard"] = {{"samples", 10000}, {"seed", 42}, {"box", json::array({vec({"-1", "1"})})}};
    add("sard-reflection", {"sard"}, "sard", s, kExitOk, {eq("/result/regular_fraction", 1.0)});
  }
  {
    json s = germ("", chart(2, json::array({kMinusI2})), chart(1), lift({json::array({term("1", {1, 1})})}));
    s["sard"] = {{"samples", 5000}, {"seed", 3}, {"box", json::array({vec({"-1", "1"})})}};
    s["critical_values"] = json::array({{{"value", vec({"0"})}, {"lift", vec({"0", "0"})}}});
    add("sard-cone-table", {"sard"}, "sard", s, kExitOk,
        {eq("/result/method", "table"), ge("/result/regular_fraction", 0.999)});
  }

  // One-dimensional orbifolds and retractions.
  const json mirror = chart(1, json::array({kZ2}));
  const json edge = chart(1, json::array(), true);
  {
    json a = interval_atlas("", mirror, edge);
    add("type-c-retraction", {"retraction"}, "retraction", a, kExitOk,
        {eq("/result/hypothesis_holds", false), eq("/result/verdict", "hypothesis not met"),
         eq("/result/breaking_stratum/chart", "left")});
    add("type-c-interval", {"classification"}, "classify1", a, kExitOk,
        {eq("/result/types", json::array({"c"})), eq("/result/parity/applicable", false)});
  }
  add("type-b-interval", {"classification", "parity"}, "classify1", interval_atlas("", edge, edge), kExitOk,
      {eq("/result/types", json::array({"b"})), eq("/result/parity/boundary_points", 2),
       eq("/result/parity/even", true)});
  add("type-d-interval", {"classification"}, "classify1", interval_atlas("", mirror, mirror), kExitOk,
      {eq("/result/types", json::array({"d"}))});
  add("Z4-circle-loop", {"classification", "parity"}, "classify1",
      circle_atlas("", kZ4, lift({json::array({term("1", {2, 0}), term("1", {0, 2})})}),
                   json::array({{{"chart", "cone"}, {"point", vec({"1", "0"})}},
                                {{"chart", "cone"}, {"point", vec({"3/5", "4/5"})}}}),
                   json::array({{{"from", 0}, {"to", 1}, {"linear", identity(2)}, {"translate", vec({"1", "0"})}},
                                {{"from", 1}, {"to", 0}, {"linear", mat({{0, 1}, {-1, 0}})},
                                 {"translate", vec({"4/5", "-3/5"})}}})),
      kExitOk, {eq("/result/types", json::array({"a"})), eq("/result/parity/even", true)});
  add("C3-circle-loop", {"classification", "parity"}, "classify1",
      circle_atlas("", kC3, lift({json::array({term("1", {2, 0}), term("-1", {1, 1}), term("1", {0, 2})})}),
                   json::array({{{"chart", "cone"}, {"point", vec({"1", "0"})}},
                                {{"chart", "cone"}, {"point", vec({"1", "1"})}}}),
                   json::array({{{"from", 0}, {"to", 1}, {"linear", identity(2)}, {"translate", vec({"1", "0"})}},
                                {{"from", 1}, {"to", 0}, {"linear", kC3}, {"translate", vec({"-1", "0"})}}})),
      kExitOk, {eq("/result/types", json::array({"a"})), eq("/result/parity/boundary_points", 0)});
  add("disk-cone-product", {"retraction"}, "retraction",
      disk_atlas("", lift({json::array({term("1", {1, 1})})})), kExitOk,
      {eq("/result/hypothesis_holds", true), eq("/result/contradiction", true),
       eq("/result/reason", "forced_mirror_absent")});
  add("disk-cone-difference", {"retraction"}, "retraction",
      disk_atlas("", lift({json::array({term("1", {2, 0}), term("-1", {0, 2})})})), kExitOk,
      {eq("/result/contradiction", true), eq("/result/reason", "forced_mirror_absent")});
  add("disk-cone-sum", {"retraction"}, "retraction",
      disk_atlas("", lift({json::array({term("1", {2, 0}), term("1", {0, 2})})})), kExitOk,
      {eq("/result/contradiction", true), eq("/result/boundary_ends", 1)});
  add("manifold-disk", {"retraction"}, "retraction", disk_atlas("", std::nullopt), kExitOk,
      {eq("/result/hypothesis_holds", true), eq("/result/contradiction", true),
       eq("/result/reason", "odd_boundary_count")});
  add("components-abb", {"classification", "parity"}, "classify1",
      {{"components", json::array({{{"shape", "loop"}},
                                   {{"shape", "interval"}, {"ends", json::array({"boundary", "boundary"})}},
                                   {{"shape", "interval"}, {"ends", json::array({"boundary", "boundary"})}}})}},
      kExitOk,
      {eq("/result/types", json::array({"a", "b", "b"})), eq("/result/parity/boundary_points", 4),
       eq("/result/parity/even", true)});
  add("components-c", {"classification", "parity"}, "classify1",
      {{"components", json::array({{{"shape", "interval"}, {"ends", json::array({"boundary", "mirror"})}}})}},
      kExitOk, {eq("/result/types", json::array({"c"})), eq("/result/parity/applicable", false)});
  return c;
}

bool compare(const json& actual, const std::string& op, const json& expected) {
  if (op == "eq") return actual == expected;
  if (!actual.is_number() || !expected.is_number()) return false;
  if (op == "ge") return actual.get<double>() >= expected.get<double>();
  if (op == "le") return actual.get<double>() <= expected.get<double>();
  return false;
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = build_corpus();
  return corpus;
}

const CorpusEntry* find_entry(const std::string& name) {
  for (const auto& e : builtin_corpus())
    if (e.name == name) return &e;
  return nullptr;
}

Outcome run_entry(const CorpusEntry& e) {
  if (e.command == "analyze") return cmd_analyze(e.scenario);
  if (e.command == "sard") return cmd_sard(e.scenario);
  if (e.command == "strata") return cmd_strata(e.scenario);
  if (e.command == "obstruct") return cmd_obstruct(e.scenario);
  if (e.command == "classify1") return cmd_classify1(e.scenario);
  if (e.command == "retraction") return cmd_retraction(e.scenario);
  throw std::logic_error("unknown corpus command " + e.command);
}

std::vector<std::string> check_expectations(const CorpusEntry& e, const Outcome& o) {
  std::vector<std::string> failures;
  if (o.exit_code != e.expected_exit)
    failures.push_back("exit code " + std::to_string(o.exit_code) + ", expected " + std::to_string(e.expected_exit));
  for (const auto& x : e.expect) {
    json::json_pointer ptr(x.pointer);
    if (!o.report.contains(ptr)) {
      failures.push_back(x.pointer + " missing");
      continue;
    }
    const json& actual = o.report.at(ptr);
    if (!compare(actual, x.op, x.value))
      failures.push_back(x.pointer + " = " + actual.dump() + ", expected " + x.op + " " + x.value.dump());
  }
  return failures;
}

bool CorpusRun::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const CorpusResult& r) { return r.pass; });
}

json CorpusRun::to_json() const {
  json rs = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    rs.push_back({{"name", r.name}, {"anchors", r.anchors}, {"pass", r.pass}, {"failures", r.failures},
                  {"exit_code", r.outcome.exit_code}});
    passed += r.pass;
  }
  return {{"tool", "orbicalc"}, {"version", kVersion}, {"command", "corpus run"}, {"total", results.size()},
          {"passed", passed}, {"results", rs}};
}

CorpusRun run_corpus(const std::string& anchor, bool corrupt) {
  CorpusRun run;
  for (const auto& entry : builtin_corpus()) {
    if (!anchor.empty() &&
        std::none_of(entry.anchors.begin(), entry.anchors.end(),
                     [&](const std::string& a) { return a.find(anchor) != std::string::npos; }))
      continue;
    CorpusEntry e = entry;
    if (corrupt && e.expected_exit != kExitInput) {
      // Keep only the metadata, so the entry can no longer load.
      e.scenario = {{"kind", e.scenario.value("kind", "germ")}, {"name", e.name}};
      corrupt = false;
    }
    CorpusResult r;
    r.name = e.name;
    r.anchors = e.anchors;
    r.outcome = run_entry(e);
    r.failures = check_expectations(e, r.outcome);
    r.pass = r.failures.empty();
    run.results.push_back(std::move(r));
  }
  return run;
}

}  // namespace orbi
