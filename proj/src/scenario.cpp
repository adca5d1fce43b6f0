#include "orbi/scenario.hpp"

#include <fstream>
#include <sstream>

#include "orbi/error.hpp"

namespace orbi {

namespace {

json matrices_to_json(const std::vector<Matrix>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

json subgroup_to_json(const Subgroup& h) {
  return {{"order", h.order()}, {"elements", matrices_to_json(h.matrices())}};
}

std::vector<Matrix> parse_theta(const json& j, const std::string& key, const std::string& path,
                                const LocalChart& source, const LocalChart& target) {
  if (!j.contains(key)) {
    if (target.group->order() != 1)
      throw InputError(path + "/" + key, "missing required field (target group is not trivial)");
    return std::vector<Matrix>(source.group->generators().size(), Matrix::identity(target.dim));
  }
  auto ms = parse_matrix_list(j.at(key), path + "/" + key, target.dim);
  if (ms.size() != source.group->generators().size())
    throw InputError(path + "/" + key, "expected one image per source generator (" +
                                           std::to_string(source.group->generators().size()) + ")");
  return ms;
}

std::string scenario_name(const json& j) {
  if (j.is_object() && j.contains("name") && j.at("name").is_string()) return j.at("name").get<std::string>();
  return "";
}

// Collects checks and results for one command; exceptions from the library
// become the report's error entry.
class ReportBuilder {
 public:
  ReportBuilder(const std::string& command, const json& scenario) {
    report_ = {{"tool", "orbicalc"}, {"version", kVersion}, {"command", command},
               {"scenario", scenario_name(scenario)}, {"seed", kDefaultSplitSeed}};
    if (scenario.is_object() && scenario.contains("anchor")) report_["anchor"] = scenario.at("anchor");
    report_["checks"] = json::array();
    report_["result"] = json::object();
    label_ = command + (report_["scenario"].get<std::string>().empty()
                            ? std::string()
                            : " " + report_["scenario"].get<std::string>());
  }

  void check(const std::string& name, bool pass, json detail = json::object()) {
    json c = {{"name", name}, {"pass", pass}};
    if (!detail.empty()) c["detail"] = std::move(detail);
    report_["checks"].push_back(std::move(c));
    if (!pass) failed_.push_back(name);
  }
  json& result() { return report_["result"]; }
  json& report() { return report_; }
  void say(std::string line) { summary_.push_back(std::move(line)); }

  template <class F>
  Outcome run(F&& f) {
    Outcome o;
    try {
      f(*this);
      if (failed_.empty()) {
        report_["status"] = "ok";
        o.exit_code = kExitOk;
      } else {
        report_["status"] = "check_failed";
        report_["error"] = {{"code", "check"}, {"message", "failed checks"}, {"failed", failed_}};
        o.exit_code = kExitCheck;
      }
    } catch (const InputError& e) {
      report_["status"] = "input_error";
      report_["error"] = {{"path", e.path()}, {"message", e.what()}};
      o.exit_code = kExitInput;
      summary_.push_back("input error: " + std::string(e.what()));
    } catch (const CheckFailure& e) {
      report_["status"] = "check_failed";
      report_["error"] = {{"code", e.code()}, {"message", e.what()}, {"witness", e.witness()}};
      o.exit_code = kExitCheck;
      summary_.push_back("check failed [" + e.code() + "]: " + e.what());
    } catch (const json::exception& e) {
      report_["status"] = "input_error";
      report_["error"] = {{"path", ""}, {"message", e.what()}};
      o.exit_code = kExitInput;
      summary_.push_back("input error: " + std::string(e.what()));
    }
    summary_.insert(summary_.begin(), label_ + ": " + report_["status"].get<std::string>());
    o.report = std::move(report_);
    o.summary = std::move(summary_);
    return o;
  }

 private:
  json report_;
  std::string label_;
  std::vector<std::string> failed_;
  std::vector<std::string> summary_;
};

json germ_to_json(const MapGerm& g) {
  return {{"source", chart_to_json(g.source)}, {"target", chart_to_json(g.target)}, {"lift", to_json(g.lift)},
          {"lift_text", g.lift.str()}, {"theta_gen_images", matrices_to_json(g.theta.generator_images())},
          {"base_point", to_json(g.base_point)}};
}

void analyze_germ(ReportBuilder& b, const json& j) {
  GermScenario s = parse_germ_scenario(j);
  MapGerm germ = build_scenario_germ(s);
  b.check("equivariance", true, {{"elements", germ.source.group->order()}});
  b.result()["germ"] = germ_to_json(germ);

  InvariantProjection proj = invariant_projection(germ);
  b.check("projection", true, {{"n_order", proj.n.order()}});
  b.result()["projection"] = projection_to_json(proj);
  CocycleReport coc = cocycle_identities(proj);
  b.check("cocycles", coc.all_hold, {{"pairs", coc.pairs_checked}});

  bool repl_ok = true;
  for (std::size_t eta = 0; eta < germ.target.group->order(); ++eta) {
    auto rr = lift_replacement_invariance(germ, eta);
    repl_ok = repl_ok && rr.kernels_equal && rr.n_equal;
  }
  b.check("lift_replacement", repl_ok, {{"etas", germ.target.group->order()}});

  RegularityReport reg = is_regular_value(germ, s.p, s.preimage_lifts);
  json pts = json::array();
  for (const auto& pr : reg.points) {
    json e = {{"point", to_json(pr.point)}, {"rank", pr.rank}};
    if (pr.boundary_rank) e["boundary_rank"] = *pr.boundary_rank;
    pts.push_back(std::move(e));
  }
  b.result()["regularity"] = {{"p", to_json(s.p)}, {"regular", reg.regular}, {"points", pts}};
  if (s.preimage_lifts.empty()) b.say("no preimage lifts supplied: regular by convention");
  if (!reg.regular)
    throw CheckFailure("not_regular", "not a regular value", {{"p", to_json(s.p)}, {"points", pts}});

  json models = json::array();
  for (std::size_t i = 0; i < s.preimage_lifts.size(); ++i) {
    const Vector& x = s.preimage_lifts[i];
    PreimageModel m =
        germ.source.boundary ? preimage_model_boundary(germ, s.p, x) : preimage_model(germ, s.p, x);
    json mj = preimage_to_json(m);
    const std::string tag = "preimage[" + std::to_string(i) + "].";
    b.check(tag + "dimension", m.dim + germ.target.dim == germ.source.dim && m.kernel.dim() == m.dim,
            {{"dim_s", m.dim}, {"dim_o", germ.source.dim}, {"dim_p", germ.target.dim}});
    bool invariant = true;
    for (const auto& g : m.germ.source.group->elements()) invariant = invariant && m.kernel.is_invariant_under(g);
    b.check(tag + "kernel_invariant", invariant);
    b.check(tag + "orders", m.gamma_s.order() * m.g.order() == m.germ.source.group->order(),
            {{"gamma_s", m.gamma_s.order()}, {"g", m.g.order()}, {"gamma_x", m.germ.source.group->order()}});
    bool effective = true;
    for (std::size_t c = 1; c < m.gamma_s.order(); ++c)
      effective = effective && !m.kernel.pointwise_fixed_by(m.germ.source.group->element(m.gamma_s.cosets()[c][0]));
    b.check(tag + "effective", effective);
    b.check(tag + "full", m.suborbifold.full);
    FaithfulnessReport fr = faithfulness_check(m);
    b.check(tag + "faithful", fr.intersection_order == 1 && fr.injective,
            {{"n_order", fr.n_order}, {"g_order", fr.g_order}, {"intersection_order", fr.intersection_order}});
    InvariantProjection mp = invariant_projection(m.germ);
    CocycleReport mc = cocycle_identities(mp);
    b.check(tag + "cocycles", mc.all_hold, {{"pairs", mc.pairs_checked}});
    mj["projection"] = projection_to_json(mp);
    if (germ.target.dim == 1 && germ.target.group->order() == 1) {
      RealTargetReport rt = real_target_structure(m);
      mj["real_target"] = {{"gamma_s_equals_gamma", rt.gamma_s_equals_gamma},
                           {"fixed_line", to_json(rt.fixed_line)},
                           {"fixed_line_pointwise_fixed", rt.fixed_line_pointwise_fixed},
                           {"image_equals_k", rt.image_equals_k},
                           {"stratum_dim", rt.stratum_dim},
                           {"group_trivial", rt.group_trivial}};
      b.check(tag + "real_target_stratum", rt.stratum_dim >= 1 && rt.fixed_line_pointwise_fixed,
              {{"stratum_dim", rt.stratum_dim}});
    }
    b.say("preimage " + to_string(x) + ": dim S = " + std::to_string(m.dim) + ", |Gamma_S| = " +
          std::to_string(m.gamma_s.order()) + ", |G| = " + std::to_string(m.g.order()));
    models.push_back(std::move(mj));
  }
  b.result()["preimages"] = std::move(models);
  b.say("A_x = " + proj.projection.str());
}

void analyze_chart(ReportBuilder& b, const json& j, bool full) {
  const json& cj = j.contains("chart") ? j.at("chart") : j;
  const std::string cpath = j.contains("chart") ? "/chart" : "";
  LocalChart chart = parse_chart(cj, cpath);
  StrataReport sr = stratify(chart);
  b.result()["chart"] = chart_to_json(chart);
  b.result()["strata"] = strata_to_json(sr);
  auto sing = sr.singular();
  b.say("order " + std::to_string(chart.group->order()) + ", " + std::to_string(sing.size()) + " singular strata");

  auto codim1 = interior_codim1_stratum(chart);
  b.result()["interior_codim1_stratum"] = codim1.has_value();
  Index2Finding f = forbidden_index2_check(chart);
  json fj = {{"forbidden", f.forbidden}, {"index2_subgroups", f.index2_subgroups},
             {"reduction", "index-2 subgroup with a nonzero fixed vector"}};
  if (f.witness) fj["witness"] = subgroup_to_json(*f.witness);
  if (f.fixed) fj["fixed"] = to_json(*f.fixed);
  b.result()["forbidden_index2"] = std::move(fj);

  if (!full) return;
  if (j.contains("isotropy_points")) {
    json out = json::array();
    const json& pts = j.at("isotropy_points");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Vector x = parse_vector(pts[i], "/isotropy_points/" + std::to_string(i), chart.dim);
      if (!in_domain(chart, x))
        throw InputError("/isotropy_points/" + std::to_string(i), "point lies outside the chart domain");
      out.push_back({{"point", to_json(x)}, {"isotropy", subgroup_to_json(isotropy_at(chart, x))}});
    }
    b.result()["isotropy"] = std::move(out);
  }
  if (j.contains("suborbifolds")) {
    json out = json::array();
    const json& subs = j.at("suborbifolds");
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const std::string path = "/suborbifolds/" + std::to_string(i);
      const json& bj = require(subs[i], "basis", path);
      std::vector<Vector> basis;
      for (std::size_t k = 0; k < bj.size(); ++k)
        basis.push_back(parse_vector(bj[k], path + "/basis/" + std::to_string(k), chart.dim));
      Subspace v = Subspace::span(chart.dim, basis);
      Subgroup lambda = Subgroup::whole(chart.group);
      if (subs[i].contains("lambda"))
        lambda = subgroup_from_matrices(chart.group, parse_matrix_list(subs[i].at("lambda"), path + "/lambda", chart.dim));
      SuborbifoldLocalModel m = suborbifold_model(chart, v, lambda);
      b.check("suborbifold[" + std::to_string(i) + "].invariant", true);
      out.push_back({{"subspace", to_json(m.subspace)}, {"lambda_order", m.lambda.order()},
                     {"omega_order", m.omega.order()}, {"intrinsic_order", m.intrinsic.order()}, {"full", m.full}});
    }
    b.result()["suborbifolds"] = std::move(out);
  }
  if (j.contains("embeddings")) {
    json out = json::array();
    const json& embs = j.at("embeddings");
    for (std::size_t i = 0; i < embs.size(); ++i) {
      const std::string path = "/embeddings/" + std::to_string(i);
      LocalChart target = parse_chart(require(embs[i], "target", path), path + "/target");
      Matrix lin = parse_matrix(require(embs[i], "linear", path), path + "/linear", target.dim, chart.dim);
      Vector t = embs[i].contains("translate") ? parse_vector(embs[i].at("translate"), path + "/translate", target.dim)
                                               : zero_vector(target.dim);
      auto imgs = parse_theta(embs[i], "theta_gen_images", path, chart, target);
      ChartEmbedding e = verify_embedding(chart, target, lin, t, imgs);
      b.check("embedding[" + std::to_string(i) + "]", true);
      out.push_back({{"theta_injective", e.theta.is_injective()}, {"target", chart_to_json(target)}});
    }
    b.result()["embeddings"] = std::move(out);
  }
}

void analyze_components(ReportBuilder& b, const json& j) {
  auto comps = parse_components(j);
  json types = json::array();
  std::string line = "types:";
  for (const auto& c : comps) {
    char t = classify_1_orbifold(c);
    types.push_back(std::string(1, t));
    line += std::string(" ") + t;
  }
  b.result()["types"] = types;
  b.say(line);
  try {
    ParityReport p = boundary_parity(comps);
    b.result()["parity"] = {{"applicable", true}, {"boundary_points", p.boundary_points}, {"even", p.even}};
    b.say("boundary points: " + std::to_string(p.boundary_points));
  } catch (const CheckFailure& e) {
    b.result()["parity"] = {{"applicable", false}, {"reason", e.code()}, {"message", e.what()}, {"witness", e.witness()}};
    b.say("parity not applicable: " + std::string(e.what()));
  }
}

void analyze_atlas(ReportBuilder& b, const json& j) {
  Atlas atlas = parse_atlas(j);
  AssemblyReport a = assemble_components(atlas);
  b.result()["assembly"] = assembly_to_json(a);
  bool no_forbidden = true;
  json charts = json::array();
  for (const auto& c : atlas.charts) {
    Index2Finding f = forbidden_index2_check(c.chart);
    no_forbidden = no_forbidden && !f.forbidden;
    charts.push_back({{"name", c.name}, {"forbidden_index2", f.forbidden}});
  }
  b.result()["charts"] = charts;
  auto closed = a.closed_components();
  b.result()["closed"] = a.closed();
  json types = json::array();
  bool only_ab = true;
  for (const auto& c : closed) {
    char t = classify_1_orbifold(c);
    only_ab = only_ab && (t == 'a' || t == 'b');
    types.push_back(std::string(1, t));
  }
  b.result()["types"] = types;
  b.say(std::to_string(a.components.size()) + " component(s), closed: " + (a.closed() ? "yes" : "no"));
  if (only_ab) {
    ParityReport p = boundary_parity(closed);
    b.result()["parity"] = {{"applicable", true}, {"boundary_points", p.boundary_points}, {"even", p.even}};
  } else {
    b.result()["parity"] = {{"applicable", false}, {"reason", "mirror_component"}};
  }
  if (no_forbidden && a.closed()) {
    bool ok = only_ab && b.result()["parity"]["even"].get<bool>();
    b.check("parity_theorem", ok, {{"types", types}});
  }
}

}  // namespace

LocalChart parse_chart(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "chart must be an object");
  std::size_t dim = parse_count(require(j, "dim", path), path + "/dim");
  bool boundary = j.contains("boundary") ? parse_bool(j.at("boundary"), path + "/boundary") : false;
  if (boundary && dim == 0) throw InputError(path + "/boundary", "a 0-dimensional chart has no boundary");
  std::vector<Matrix> gens;
  if (j.contains("generators")) gens = parse_matrix_list(j.at("generators"), path + "/generators", dim);
  return build_chart(dim, gens, boundary);
}

json chart_to_json(const LocalChart& c) {
  return {{"dim", c.dim}, {"boundary", c.boundary}, {"generators", matrices_to_json(c.group->generators())},
          {"order", c.group->order()}};
}

GermScenario parse_germ_scenario(const json& j) {
  if (!j.is_object()) throw InputError("", "scenario must be a JSON object");
  GermScenario s;
  s.name = scenario_name(j);
  s.source = parse_chart(require(j, "source", ""), "/source");
  s.target = parse_chart(require(j, "target", ""), "/target");
  s.theta_gen_images = parse_theta(j, "theta_gen_images", "", s.source, s.target);
  s.lift = parse_multipoly(require(j, "lift", ""), "/lift", s.source.dim, s.target.dim);
  s.base_point = j.contains("base_point") ? parse_vector(j.at("base_point"), "/base_point", s.source.dim)
                                          : zero_vector(s.source.dim);
  if (j.contains("p")) {
    s.p = parse_vector(j.at("p"), "/p", s.target.dim);
    s.p_given = true;
    if (j.contains("preimage_lifts")) {
      const json& pl = j.at("preimage_lifts");
      if (!pl.is_array()) throw InputError("/preimage_lifts", "expected an array of points");
      for (std::size_t i = 0; i < pl.size(); ++i)
        s.preimage_lifts.push_back(parse_vector(pl[i], "/preimage_lifts/" + std::to_string(i), s.source.dim));
    }
  } else {
    if (j.contains("preimage_lifts")) throw InputError("/preimage_lifts", "preimage lifts need a value p");
    s.p = s.lift.eval(s.base_point);
    s.preimage_lifts.push_back(s.base_point);
  }
  if (j.contains("critical_values")) {
    const json& cv = j.at("critical_values");
    if (!cv.is_array()) throw InputError("/critical_values", "expected an array");
    std::vector<CriticalEntry> table;
    for (std::size_t i = 0; i < cv.size(); ++i) {
      const std::string path = "/critical_values/" + std::to_string(i);
      table.push_back({parse_vector(require(cv[i], "value", path), path + "/value", s.target.dim),
                       parse_vector(require(cv[i], "lift", path), path + "/lift", s.source.dim)});
    }
    s.critical_values = std::move(table);
  }
  return s;
}

MapGerm build_scenario_germ(const GermScenario& s) {
  GroupHom theta = verify_homomorphism(s.source.group, s.target.group, s.theta_gen_images);
  return build_germ(s.source, s.target, s.lift, theta, s.base_point);
}

Atlas parse_atlas(const json& j) {
  if (!j.is_object()) throw InputError("", "atlas must be a JSON object");
  Atlas a;
  a.target = parse_chart(require(j, "target", ""), "/target");
  a.p = parse_vector(require(j, "p", ""), "/p", a.target.dim);
  if (!in_domain(a.target, a.p)) throw InputError("/p", "p lies outside the target chart");
  const json& charts = require(j, "charts", "");
  if (!charts.is_array() || charts.empty()) throw InputError("/charts", "expected a nonempty array");
  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < charts.size(); ++i) {
    const std::string path = "/charts/" + std::to_string(i);
    AtlasChart c;
    c.name = parse_string(require(charts[i], "name", path), path + "/name");
    if (!by_name.emplace(c.name, i).second) throw InputError(path + "/name", "duplicate chart name");
    c.chart = parse_chart(require(charts[i], "chart", path), path + "/chart");
    if (charts[i].contains("germ")) {
      const json& g = charts[i].at("germ");
      const std::string gpath = path + "/germ";
      MultiPoly lift = parse_multipoly(require(g, "lift", gpath), gpath + "/lift", c.chart.dim, a.target.dim);
      auto imgs = parse_theta(g, "theta_gen_images", gpath, c.chart, a.target);
      GroupHom theta = verify_homomorphism(c.chart.group, a.target.group, imgs);
      c.germ = build_germ(c.chart, a.target, lift, theta, zero_vector(c.chart.dim));
    }
    a.charts.push_back(std::move(c));
  }
  if (j.contains("pieces")) {
    const json& pieces = j.at("pieces");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const std::string path = "/pieces/" + std::to_string(i);
      std::string name = parse_string(require(pieces[i], "chart", path), path + "/chart");
      auto it = by_name.find(name);
      if (it == by_name.end()) throw InputError(path + "/chart", "unknown chart " + name);
      a.pieces.push_back({it->second, parse_vector(require(pieces[i], "point", path), path + "/point",
                                                   a.charts[it->second].chart.dim)});
    }
  }
  if (j.contains("links")) {
    const json& links = j.at("links");
    for (std::size_t i = 0; i < links.size(); ++i) {
      const std::string path = "/links/" + std::to_string(i);
      AtlasLink l;
      l.from = parse_count(require(links[i], "from", path), path + "/from");
      l.to = parse_count(require(links[i], "to", path), path + "/to");
      if (l.from >= a.pieces.size() || l.to >= a.pieces.size()) throw InputError(path, "unknown piece index");
      const LocalChart& src = a.charts[a.pieces[l.from].chart].chart;
      const LocalChart& dst = a.charts[a.pieces[l.to].chart].chart;
      l.linear = parse_matrix(require(links[i], "linear", path), path + "/linear", dst.dim, src.dim);
      l.translate = parse_vector(require(links[i], "translate", path), path + "/translate", dst.dim);
      // Theta runs from the isotropy group of the `from` piece, whose
      // generators are fixed only after recentering; omit it to infer.
      if (links[i].contains("theta_gen_images"))
        l.theta_gen_images = parse_matrix_list(links[i].at("theta_gen_images"), path + "/theta_gen_images", dst.dim);
      a.links.push_back(std::move(l));
    }
  }
  return a;
}

std::vector<OneOrbifoldComponent> parse_components(const json& j) {
  const json* arr = &j;
  std::string base;
  if (j.is_object() && j.contains("components")) {
    arr = &j.at("components");
    base = "/components";
  } else if (j.is_object()) {
    json one = json::array({j});
    return parse_components(one);
  }
  if (!arr->is_array()) throw InputError(base, "expected an array of components");
  std::vector<OneOrbifoldComponent> out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const std::string path = base + "/" + std::to_string(i);
    const json& cj = (*arr)[i];
    std::string shape = parse_string(require(cj, "shape", path), path + "/shape");
    OneOrbifoldComponent c;
    if (shape == "loop")
      c.loop = true;
    else if (shape != "interval")
      throw InputError(path + "/shape", "expected \"loop\" or \"interval\"");
    if (cj.contains("ends")) {
      const json& ends = cj.at("ends");
      if (!ends.is_array()) throw InputError(path + "/ends", "expected an array");
      for (std::size_t k = 0; k < ends.size(); ++k) {
        std::string e = parse_string(ends[k], path + "/ends/" + std::to_string(k));
        if (e == "boundary")
          c.ends.push_back(EndKind::boundary);
        else if (e == "mirror")
          c.ends.push_back(EndKind::mirror);
        else
          throw InputError(path + "/ends/" + std::to_string(k), "expected \"boundary\" or \"mirror\"");
      }
    }
    try {
      classify_1_orbifold(c);
    } catch (const InputError& e) {
      throw InputError(path + "/ends", e.what());
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string scenario_kind(const json& j) {
  if (j.is_array()) return "components";
  if (!j.is_object()) throw InputError("", "scenario must be a JSON object");
  if (j.contains("kind")) {
    std::string k = parse_string(j.at("kind"), "/kind");
    if (k != "germ" && k != "chart" && k != "atlas" && k != "components")
      throw InputError("/kind", "unknown scenario kind " + k);
    return k;
  }
  if (j.contains("source")) return "germ";
  if (j.contains("charts")) return "atlas";
  if (j.contains("components") || j.contains("shape")) return "components";
  if (j.contains("chart") || j.contains("dim")) return "chart";
  throw InputError("", "cannot tell the scenario kind; set \"kind\"");
}

Outcome cmd_analyze(const json& scenario) {
  ReportBuilder b("analyze", scenario);
  return b.run([&](ReportBuilder& r) {
    std::string kind = scenario_kind(scenario);
    r.report()["kind"] = kind;
    if (kind == "germ")
      analyze_germ(r, scenario);
    else if (kind == "chart")
      analyze_chart(r, scenario, true);
    else if (kind == "atlas")
      analyze_atlas(r, scenario);
    else
      analyze_components(r, scenario);
  });
}

Outcome cmd_sard(const json& scenario, const SardFlags& flags) {
  ReportBuilder b("sard", scenario);
  return b.run([&](ReportBuilder& r) {
    GermScenario s = parse_germ_scenario(scenario);
    MapGerm germ = build_scenario_germ(s);
    SardOptions opts;
    if (scenario.contains("sard")) {
      const json& sj = scenario.at("sard");
      if (sj.contains("samples")) opts.samples = parse_count(sj.at("samples"), "/sard/samples");
      if (sj.contains("seed")) opts.seed = parse_count(sj.at("seed"), "/sard/seed");
      if (sj.contains("box")) {
        const json& bx = sj.at("box");
        for (std::size_t i = 0; i < bx.size(); ++i) {
          const std::string path = "/sard/box/" + std::to_string(i);
          Vector iv = parse_vector(bx[i], path, 2);
          opts.box.emplace_back(iv[0].to_double(), iv[1].to_double());
        }
      }
    }
    if (flags.samples) opts.samples = *flags.samples;
    if (flags.seed) opts.seed = *flags.seed;
    if (flags.box) opts.box = *flags.box;
    if (opts.box.empty()) opts.box.assign(germ.target.dim, {-1.0, 1.0});
    opts.table = s.critical_values;
    SardReport sr = sard_sample(germ, opts);
    r.report()["seed"] = opts.seed;
    r.result() = sard_to_json(sr, opts);
    r.say("regular fraction " + std::to_string(sr.regular_fraction) + " over " + std::to_string(sr.samples) +
          " samples, " + std::to_string(sr.critical_values.size()) + " distinct critical value(s)");
  });
}

Outcome cmd_strata(const json& scenario) {
  ReportBuilder b("strata", scenario);
  return b.run([&](ReportBuilder& r) { analyze_chart(r, scenario, false); });
}

Outcome cmd_obstruct(const json& scenario) {
  ReportBuilder b("obstruct", scenario);
  return b.run([&](ReportBuilder& r) {
    if (!scenario.is_object()) throw InputError("", "scenario must be a JSON object");
    LocalChart source = parse_chart(require(scenario, "source", ""), "/source");
    LocalChart target = parse_chart(require(scenario, "target", ""), "/target");
    auto imgs = parse_theta(scenario, "theta_gen_images", "", source, target);
    GroupHom theta = verify_homomorphism(source.group, target.group, imgs);
    std::optional<MultiPoly> candidate;
    if (scenario.contains("lift"))
      candidate = parse_multipoly(scenario.at("lift"), "/lift", source.dim, target.dim);
    ObstructionCertificate c = obstruction_certificate(source, target, theta, candidate);
    r.result() = obstruction_to_json(c);
    r.say("verdict " + to_string(c.verdict) + " (" + c.reason + "): " + c.detail);
  });
}

Outcome cmd_classify1(const json& scenario) {
  ReportBuilder b("classify1", scenario);
  return b.run([&](ReportBuilder& r) {
    if (scenario_kind(scenario) == "atlas")
      analyze_atlas(r, scenario);
    else
      analyze_components(r, scenario);
  });
}

Outcome cmd_retraction(const json& scenario) {
  ReportBuilder b("retraction", scenario);
  return b.run([&](ReportBuilder& r) {
    Atlas atlas = parse_atlas(scenario);
    RetractionReport rr = retraction_contradiction(atlas);
    r.result() = retraction_to_json(rr);
    if (!rr.hypothesis_holds)
      r.say("hypothesis not met: interior codimension-1 stratum in chart " + *rr.hypothesis.chart);
    else
      r.say(std::string("contradiction: ") + rr.reason);
  });
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot read file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InputError("", "invalid JSON in " + path + ": " + e.what());
  }
}

json strata_to_json(const StrataReport& r) {
  json all = json::array();
  json dims = json::array();
  std::size_t singular = 0;
  for (const auto& s : r.strata) {
    all.push_back({{"dim", s.dim}, {"codim", s.codim}, {"boundary", s.boundary}, {"singular", s.singular},
                   {"isotropy", subgroup_to_json(s.isotropy)}, {"fixed", to_json(s.fixed)},
                   {"orbit_class", s.orbit_class}, {"sample", to_json(s.sample)}});
    if (s.singular) {
      ++singular;
      dims.push_back(s.dim);
    }
  }
  return {{"strata", all}, {"singular_count", singular}, {"singular_dims", dims}};
}

json projection_to_json(const InvariantProjection& p) {
  return {{"n_order", p.n.order()}, {"n", matrices_to_json(p.n.matrices())}, {"a_x", to_json(p.projection)},
          {"k", to_json(p.k)}, {"kernel", to_json(p.kernel)}, {"image", to_json(p.image)}};
}

json preimage_to_json(const PreimageModel& m) {
  json j = {{"center", to_json(m.center)},
            {"recentered", m.recentered},
            {"isotropy_order", m.germ.source.group->order()},
            {"jacobian", to_json(m.jacobian)},
            {"kernel", to_json(m.kernel)},
            {"dim", m.dim},
            {"g_order", m.g.order()},
            {"gamma_s_order", m.gamma_s.order()},
            {"on_boundary", m.on_boundary},
            {"suborbifold",
             {{"full", m.suborbifold.full},
              {"lambda_order", m.suborbifold.lambda.order()},
              {"omega_order", m.suborbifold.omega.order()},
              {"intrinsic_order", m.suborbifold.intrinsic.order()}}}};
  if (m.boundary_kernel) j["boundary_kernel"] = to_json(*m.boundary_kernel);
  return j;
}

json obstruction_to_json(const ObstructionCertificate& c) {
  json j = {{"verdict", to_string(c.verdict)}, {"reason", c.reason}, {"n_order", c.n_order},
            {"kernel_dim_needed", c.kernel_dim_needed}, {"detail", c.detail}};
  if (c.subspace_search) {
    const auto& s = *c.subspace_search;
    json sj = {{"status", to_string(s.status)}, {"reason", s.reason}, {"commutant_dim", s.commutant_dim}};
    if (s.subspace) sj["subspace"] = to_json(*s.subspace);
    json dims = json::array();
    for (const auto& p : s.decomposition.pieces) dims.push_back(p.dim());
    sj["piece_dims"] = dims;
    sj["irreducible"] = s.decomposition.irreducible;
    j["subspace_search"] = std::move(sj);
  }
  if (c.witness_lift) {
    j["witness_lift"] = to_json(*c.witness_lift);
    j["witness_text"] = c.witness_lift->str();
  }
  return j;
}

json sard_to_json(const SardReport& r, const SardOptions& opts) {
  json box = json::array();
  for (const auto& [lo, hi] : opts.box) box.push_back({lo, hi});
  json crit = json::array();
  for (const auto& v : r.critical_values) crit.push_back(to_json(v));
  return {{"samples", r.samples},
          {"seed", opts.seed},
          {"box", box},
          {"snap_denominator", opts.snap_denominator},
          {"method", r.method},
          {"regular", r.regular},
          {"regular_fraction", r.regular_fraction},
          {"regular_fraction_exact", Rational(static_cast<long>(r.regular), static_cast<long>(r.samples ? r.samples : 1)).str()},
          {"critical_values", crit}};
}

json assembly_to_json(const AssemblyReport& a) {
  json pieces = json::array();
  for (const auto& p : a.pieces)
    pieces.push_back({{"kind", to_string(p.kind)}, {"center", to_json(p.model.center)},
                      {"gamma_s_order", p.model.gamma_s.order()}, {"kernel", to_json(p.model.kernel)}});
  json comps = json::array();
  for (const auto& c : a.components) {
    json ends = json::array();
    for (auto e : c.ends) ends.push_back(e == EndKind::boundary ? "boundary" : "mirror");
    json cj = {{"pieces", c.pieces}, {"dangling_ports", c.dangling_ports}, {"ends", ends}};
    if (c.component) cj["type"] = std::string(1, classify_1_orbifold(*c.component));
    comps.push_back(std::move(cj));
  }
  return {{"pieces", pieces}, {"components", comps}};
}

json retraction_to_json(const RetractionReport& r) {
  json j = {{"hypothesis_holds", r.hypothesis_holds},
            {"contradiction", r.contradiction},
            {"verdict", r.hypothesis_holds ? "contradiction" : "hypothesis not met"},
            {"reason", r.reason},
            {"boundary_ends", r.boundary_ends},
            {"findings", r.findings}};
  if (r.hypothesis.chart) {
    const Stratum& s = *r.hypothesis.stratum;
    j["breaking_stratum"] = {{"chart", *r.hypothesis.chart}, {"dim", s.dim}, {"codim", s.codim},
                             {"isotropy", subgroup_to_json(s.isotropy)}, {"fixed", to_json(s.fixed)}};
  }
  if (r.assembly) j["assembly"] = assembly_to_json(*r.assembly);
  return j;
}

}  // namespace orbi
