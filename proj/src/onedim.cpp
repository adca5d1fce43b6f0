#include "orbi/onedim.hpp"

#include <numeric>

#include "orbi/error.hpp"
#include "orbi/serialize.hpp"

namespace orbi {

char classify_1_orbifold(const OneOrbifoldComponent& c) {
  if (c.loop) {
    if (!c.ends.empty()) throw InputError("/ends", "a loop has no ends");
    return 'a';
  }
  if (c.ends.size() != 2) throw InputError("/ends", "an interval has exactly two ends");
  const int mirrors = (c.ends[0] == EndKind::mirror) + (c.ends[1] == EndKind::mirror);
  return mirrors == 0 ? 'b' : (mirrors == 1 ? 'c' : 'd');
}

ParityReport boundary_parity(const std::vector<OneOrbifoldComponent>& components) {
  ParityReport r;
  for (std::size_t i = 0; i < components.size(); ++i) {
    char t = classify_1_orbifold(components[i]);
    if (t == 'c' || t == 'd')
      throw CheckFailure("mirror_component",
                         std::string("component of type ") + t + " present; parity needs types a and b only",
                         {{"component", i}, {"type", std::string(1, t)}});
    if (t == 'b') r.boundary_points += 2;
  }
  r.even = r.boundary_points % 2 == 0;
  return r;
}

Index2Finding forbidden_index2_check(const LocalChart& chart) {
  Index2Finding f;
  auto subs = index2_subgroups(chart.group);
  f.index2_subgroups = subs.size();
  for (auto& h : subs) {
    Subspace fix = fixed_subspace(h);
    if (fix.dim() > 0) {
      f.forbidden = true;
      f.witness = std::move(h);
      f.fixed = std::move(fix);
      break;
    }
  }
  return f;
}

HypothesisReport no_retraction_hypothesis(const Atlas& atlas) {
  HypothesisReport r;
  for (const auto& c : atlas.charts)
    if (auto s = interior_codim1_stratum(c.chart)) {
      r.holds = false;
      r.chart = c.name;
      r.stratum = std::move(s);
      return r;
    }
  return r;
}

std::string to_string(PieceKind k) {
  switch (k) {
    case PieceKind::boundary_end: return "boundary_end";
    case PieceKind::mirror_end: return "mirror_end";
    case PieceKind::arc: return "arc";
  }
  return "?";
}

bool AssemblyReport::closed() const {
  for (const auto& c : components)
    if (!c.component) return false;
  return true;
}

std::vector<OneOrbifoldComponent> AssemblyReport::closed_components() const {
  std::vector<OneOrbifoldComponent> out;
  for (const auto& c : components)
    if (c.component) out.push_back(*c.component);
  return out;
}

namespace {

// For each source generator g, the first target element h with h L = L g and
// h t = t; unique when L is invertible.
std::vector<Matrix> infer_link_theta(const LocalChart& source, const LocalChart& target, const AtlasLink& link,
                                     std::size_t index) {
  if (link.linear.rows() != target.dim || link.linear.cols() != source.dim || link.translate.size() != target.dim)
    throw InputError("/links/" + std::to_string(index), "link shape does not match the charts");
  std::vector<Matrix> out;
  for (const auto& g : source.group->generators()) {
    const Matrix lg = link.linear * g;
    bool found = false;
    for (const auto& h : target.group->elements())
      if (h * link.linear == lg && h * link.translate == link.translate) {
        out.push_back(h);
        found = true;
        break;
      }
    if (!found)
      throw CheckFailure("not_equivariant", "no target element matches a source generator across the link",
                         {{"link", index}, {"gamma", to_json(g)}});
  }
  return out;
}

}  // namespace

AssemblyReport assemble_components(const Atlas& atlas) {
  AssemblyReport rep;
  for (std::size_t i = 0; i < atlas.pieces.size(); ++i) {
    const auto& piece = atlas.pieces[i];
    const std::string path = "/pieces/" + std::to_string(i);
    if (piece.chart >= atlas.charts.size()) throw InputError(path + "/chart", "unknown chart");
    const auto& ac = atlas.charts[piece.chart];
    if (!ac.germ) throw InputError(path + "/chart", "chart " + ac.name + " carries no germ");
    PreimageModel m = ac.chart.boundary ? preimage_model_boundary(*ac.germ, atlas.p, piece.point)
                                        : preimage_model(*ac.germ, atlas.p, piece.point);
    if (m.dim != 1)
      throw CheckFailure("not_one_dimensional", "preimage piece is not 1-dimensional",
                         {{"piece", i}, {"dim", m.dim}});
    PieceKind kind;
    if (m.on_boundary)
      kind = PieceKind::boundary_end;
    else if (m.gamma_s.order() == 2)
      kind = PieceKind::mirror_end;
    else if (m.gamma_s.order() == 1)
      kind = PieceKind::arc;
    else
      throw std::logic_error("a group acting effectively on a line has order at most 2");
    rep.pieces.push_back(PieceModel{std::move(m), kind});
  }

  const std::size_t np = rep.pieces.size();
  std::vector<std::size_t> degree(np, 0), parent(np);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (std::size_t l = 0; l < atlas.links.size(); ++l) {
    const auto& link = atlas.links[l];
    const std::string path = "/links/" + std::to_string(l);
    if (link.from >= np || link.to >= np) throw InputError(path, "link refers to an unknown piece");
    const PreimageModel& from = rep.pieces[link.from].model;
    const auto& to_chart = atlas.charts[atlas.pieces[link.to].chart];
    std::vector<Matrix> images = link.theta_gen_images;
    if (images.empty()) images = infer_link_theta(from.germ.source, to_chart.chart, link, l);
    ChartEmbedding e = verify_embedding(from.germ.source, to_chart.chart, link.linear, link.translate, images);

    Vector x = e.apply(zero_vector(from.germ.source.dim));
    Subgroup stab = stabilizer(to_chart.chart.group, x);
    Subgroup img = image_of(e.theta);
    if (!(stab == img))
      throw CheckFailure("inconsistent_identification",
                         "inconsistent identification: isotropy at the image point differs from theta(isotropy)",
                         {{"link", l}, {"point", to_json(x)}, {"isotropy_order", stab.order()},
                          {"theta_image_order", img.order()}});

    MultiPoly pulled = to_chart.germ->lift.compose_affine(link.linear, link.translate);
    bool matched = false;
    for (const auto& eta : atlas.target.group->elements())
      if ((pulled - from.germ.lift.left_multiply(eta)).is_identically_zero()) {
        matched = true;
        break;
      }
    if (!matched)
      throw CheckFailure("lift_mismatch", "lifts do not agree across the identification",
                         {{"link", l}, {"pulled_back", pulled.str()}, {"from_lift", from.germ.lift.str()}});
    ++degree[link.from];
    ++degree[link.to];
    parent[find(link.from)] = find(link.to);
  }

  std::vector<std::size_t> comp_of(np, np);
  for (std::size_t i = 0; i < np; ++i) {
    std::size_t r = find(i);
    if (comp_of[r] == np) {
      comp_of[r] = rep.components.size();
      rep.components.emplace_back();
    }
    auto& c = rep.components[comp_of[r]];
    c.pieces.push_back(i);
    const auto& pm = rep.pieces[i];
    if (degree[i] > pm.ports())
      throw CheckFailure("over_linked", "piece has more identifications than ends",
                         {{"piece", i}, {"links", degree[i]}, {"ports", pm.ports()}});
    c.dangling_ports += pm.ports() - degree[i];
    if (pm.kind == PieceKind::boundary_end) c.ends.push_back(EndKind::boundary);
    if (pm.kind == PieceKind::mirror_end) c.ends.push_back(EndKind::mirror);
  }
  for (auto& c : rep.components) {
    if (c.dangling_ports != 0) continue;
    OneOrbifoldComponent oc;
    oc.loop = c.ends.empty();
    oc.ends = c.ends;
    c.component = oc;
  }
  return rep;
}

RetractionReport retraction_contradiction(const Atlas& atlas) {
  RetractionReport r;
  bool any_boundary = false, all_trivial = true;
  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    const auto& c = atlas.charts[i];
    const std::string path = "/charts/" + std::to_string(i);
    if (!c.germ) throw InputError(path + "/germ", "a retraction scenario needs a candidate germ on every chart");
    if (c.chart.dim == 0 || atlas.target.dim + 1 != c.chart.dim)
      throw InputError(path, "target chart must have dimension one less than the chart");
    if (c.chart.group->order() > 1) all_trivial = false;
    if (!c.chart.boundary) continue;
    any_boundary = true;
    MultiPoly on_bd = c.germ->lift.restrict_to_last_hyperplane();
    MultiPoly id = MultiPoly::affine(Matrix::identity(atlas.target.dim), zero_vector(atlas.target.dim));
    if (!(on_bd - id).is_identically_zero())
      throw CheckFailure("not_boundary_identity", "candidate germ does not fix the boundary",
                         {{"chart", c.name}, {"restriction", on_bd.str()}});
  }
  if (!any_boundary) throw InputError("/charts", "a retraction scenario needs at least one boundary chart");
  if (!stabilizer(atlas.target.group, atlas.p).is_trivial())
    throw CheckFailure("p_singular", "p lies in the singular set of the boundary", {{"p", to_json(atlas.p)}});

  r.hypothesis = no_retraction_hypothesis(atlas);
  r.hypothesis_holds = r.hypothesis.holds;
  if (!r.hypothesis_holds) {
    r.findings.push_back("interior codimension-1 singular stratum in chart " + *r.hypothesis.chart +
                         "; the theorem does not apply and a retraction may exist");
    return r;
  }

  AssemblyReport a = assemble_components(atlas);
  for (const auto& pm : a.pieces) {
    if (pm.kind == PieceKind::boundary_end) ++r.boundary_ends;
    if (pm.kind == PieceKind::mirror_end)
      throw std::logic_error("mirror end without a codimension-1 stratum");
  }
  if (r.boundary_ends == 0) throw InputError("/pieces", "declare the boundary preimage point of p as a piece");
  if (r.boundary_ends > 1)
    throw CheckFailure("boundary_preimage", "the boundary identity allows only one boundary point over p",
                       {{"boundary_ends", r.boundary_ends}});
  for (const auto& c : a.components)
    if (c.dangling_ports)
      r.findings.push_back("component through pieces " + json(c.pieces).dump() + " has " +
                           std::to_string(c.dangling_ports) + " open end(s)");
  r.findings.push_back("boundary of the preimage is the single point p");
  r.findings.push_back("an odd number of boundary points forces a component of type (c)");
  r.findings.push_back("its mirror point needs an interior codimension-1 stratum, and no chart has one");
  r.contradiction = true;
  r.reason = all_trivial ? "odd_boundary_count" : "forced_mirror_absent";
  r.assembly = std::move(a);
  return r;
}

}  // namespace orbi
