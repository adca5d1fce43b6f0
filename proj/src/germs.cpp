#include "orbi/germs.hpp"

#include <algorithm>
#include <random>

#include "orbi/error.hpp"
#include "orbi/serialize.hpp"

namespace orbi {

namespace {

Subspace boundary_hyperplane(std::size_t n) {
  Matrix e(1, n);
  e(0, n - 1) = 1;
  return Subspace::null_space(e);
}

Matrix drop_last_column(const Matrix& m) {
  Matrix r(m.rows(), m.cols() - 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j + 1 < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

}  // namespace

MapGerm build_germ(const LocalChart& source, const LocalChart& target, const MultiPoly& lift, const GroupHom& theta,
                   const Vector& base_point) {
  if (lift.num_vars() != source.dim)
    throw InputError("/lift", "lift has " + std::to_string(lift.num_vars()) + " variables, source dim is " +
                                  std::to_string(source.dim));
  if (lift.out_dim() != target.dim)
    throw InputError("/lift", "lift has " + std::to_string(lift.out_dim()) + " components, target dim is " +
                                  std::to_string(target.dim));
  if (theta.source() != source.group || theta.target() != target.group)
    throw std::invalid_argument("theta does not run between the chart groups");
  if (base_point.size() != source.dim) throw InputError("/base_point", "length must equal the source dimension");
  if (!in_domain(source, base_point))
    throw CheckFailure("domain", "base point lies outside the source half-space", {{"base_point", to_json(base_point)}});
  for (const auto& g : source.group->generators())
    if (g * base_point != base_point)
      throw CheckFailure("base_not_fixed", "base point is not fixed by the source group",
                         {{"gamma", to_json(g)}, {"base_point", to_json(base_point)}});
  Vector image = lift.eval(base_point);
  if (!in_domain(target, image))
    throw CheckFailure("domain", "lift sends the base point outside the target half-space",
                       {{"image", to_json(image)}});

  for (std::size_t i = 0; i < source.group->order(); ++i) {
    const Matrix& g = source.group->element(i);
    const Matrix& tg = target.group->element(theta(i));
    MultiPoly residual = lift.compose_linear(g) - lift.left_multiply(tg);
    if (!residual.is_identically_zero())
      throw CheckFailure("not_equivariant", "lift is not theta-equivariant",
                         {{"gamma", to_json(g)}, {"theta_gamma", to_json(tg)}, {"residual", to_json(residual)},
                          {"residual_text", residual.str()}});
  }
  return MapGerm{source, target, lift, theta, base_point};
}

MapGerm build_germ(const LocalChart& source, const LocalChart& target, const MultiPoly& lift,
                   const std::vector<Matrix>& theta_gen_images, const Vector& base_point) {
  return build_germ(source, target, lift, verify_homomorphism(source.group, target.group, theta_gen_images),
                    base_point);
}

RegularityReport is_regular_value(const MapGerm& germ, const Vector& p, const std::vector<Vector>& preimage_lifts) {
  if (p.size() != germ.target.dim) throw InputError("/p", "length must equal the target dimension");
  RegularityReport r;
  for (std::size_t i = 0; i < preimage_lifts.size(); ++i) {
    const Vector& x = preimage_lifts[i];
    const std::string path = "/preimage_lifts/" + std::to_string(i);
    if (x.size() != germ.source.dim) throw InputError(path, "length must equal the source dimension");
    if (!in_domain(germ.source, x)) throw InputError(path, "point lies outside the source half-space");
    if (germ.lift.eval(x) != p) throw InputError(path, "point does not map to p under the lift");
    Matrix j = germ.lift.jacobian(x);
    PointRank pr{x, rank(j), std::nullopt};
    if (on_boundary(germ.source, x)) pr.boundary_rank = rank(drop_last_column(j));
    if (pr.rank != germ.target.dim) r.regular = false;
    r.points.push_back(std::move(pr));
  }
  return r;
}

MapGerm recenter(const MapGerm& germ, const Vector& point) {
  if (point.size() != germ.source.dim) throw InputError("point length must equal the source dimension");
  if (!in_domain(germ.source, point)) throw InputError("point lies outside the source half-space");
  Subgroup h = stabilizer(germ.source.group, point);
  GroupPtr hg = h.as_group();
  const bool boundary = on_boundary(germ.source, point);
  LocalChart src = chart_from_group(hg, boundary);
  MultiPoly lift = germ.lift.compose_affine(Matrix::identity(germ.source.dim), point);
  std::vector<std::size_t> imgs;
  for (const auto& g : hg->generators()) imgs.push_back(germ.theta(*germ.source.group->index_of(g)));
  GroupHom theta = verify_homomorphism(hg, germ.target.group, imgs);
  return build_germ(src, germ.target, lift, theta, zero_vector(germ.source.dim));
}

PreimageModel preimage_model(const MapGerm& germ, const Vector& p, const Vector& point) {
  if (p.size() != germ.target.dim) throw InputError("/p", "length must equal the target dimension");
  if (point.size() != germ.source.dim) throw InputError("/lift_point", "length must equal the source dimension");
  if (!in_domain(germ.source, point)) throw InputError("/lift_point", "point lies outside the source half-space");
  if (germ.lift.eval(point) != p) throw InputError("/lift_point", "point does not map to p under the lift");

  PreimageModel m;
  m.recentered = !is_zero(point);
  m.germ = m.recentered ? recenter(germ, point) : germ;
  m.center = point;
  m.p = p;
  const auto& src = m.germ.source;
  const Vector origin = zero_vector(src.dim);
  m.jacobian = m.germ.lift.jacobian(origin);
  const std::size_t r = rank(m.jacobian);
  if (r != m.germ.target.dim)
    throw CheckFailure("not_regular", "not a regular value: the Jacobian is not surjective at the lift point",
                       {{"point", to_json(point)}, {"jacobian", to_json(m.jacobian)}, {"rank", r},
                        {"target_dim", m.germ.target.dim}});

  m.kernel = Subspace::null_space(m.jacobian);
  for (std::size_t i = 0; i < src.group->order(); ++i)
    if (!m.kernel.is_invariant_under(src.group->element(i)))
      throw CheckFailure("kernel_not_invariant", "kernel of the Jacobian is not invariant",
                         {{"gamma", to_json(src.group->element(i))}, {"kernel", to_json(m.kernel)}});

  const Subgroup whole = Subgroup::whole(src.group);
  m.g = pointwise_stabilizer(whole, m.kernel);
  m.gamma_s = quotient(m.g);
  for (std::size_t c = 1; c < m.gamma_s.order(); ++c)
    if (m.kernel.pointwise_fixed_by(src.group->element(m.gamma_s.cosets()[c].front())))
      throw CheckFailure("not_effective", "a nontrivial coset acts as the identity on K", json::object());
  m.suborbifold = suborbifold_model(src, m.kernel, whole);
  m.dim = src.dim - m.germ.target.dim;
  if (m.kernel.dim() != m.dim) throw std::logic_error("kernel dimension disagrees with rank");
  m.on_boundary = src.boundary;
  return m;
}

PreimageModel preimage_model_boundary(const MapGerm& germ, const Vector& p, const Vector& point) {
  if (!germ.source.boundary) throw InputError("/source/boundary", "source chart has no boundary");
  PreimageModel m = preimage_model(germ, p, point);
  if (!m.on_boundary) return m;
  Matrix jb = drop_last_column(m.jacobian);
  const std::size_t rb = rank(jb);
  if (rb != m.germ.target.dim)
    throw CheckFailure("boundary_not_regular", "p is not a regular value of the restriction to the boundary",
                       {{"point", to_json(point)}, {"boundary_jacobian", to_json(jb)}, {"rank", rb}});
  Subspace kb = m.kernel.intersect(boundary_hyperplane(m.germ.source.dim));
  if (kb.dim() + 1 != m.kernel.dim()) throw std::logic_error("kernel is not transverse to the boundary");
  m.boundary_kernel = std::move(kb);
  return m;
}

InvariantProjection invariant_projection(const MapGerm& germ) {
  const auto& grp = germ.source.group;
  const std::size_t n = germ.source.dim;
  const Matrix id = Matrix::identity(n);
  InvariantProjection p;
  p.n = kernel_of(germ.theta);
  p.k = Subspace::null_space(germ.lift.jacobian(germ.base_point));
  p.average = Matrix(n, n);
  for (auto i : p.n.members()) {
    p.a_gamma.push_back(grp->element(i) - id);
    p.average += p.a_gamma.back();
  }
  p.average *= Rational(1, static_cast<long>(p.n.order()));
  p.projection = Rational(-1) * p.average;
  auto kir = kernel_image_rank(p.projection);
  p.kernel = kir.kernel;
  p.image = kir.image;

  auto fail = [](const std::string& what, json w = json::object()) {
    throw CheckFailure("projection", "invariant projection identity fails: " + what, std::move(w));
  };
  if (p.projection * p.projection != p.projection) fail("A_x^2 != A_x");
  for (std::size_t t = 0; t < p.a_gamma.size(); ++t) {
    const Matrix& g = grp->element(p.n.members()[t]);
    if (g * p.projection != p.projection * g) fail("gamma A_x != A_x gamma", {{"gamma", to_json(g)}});
    if (!p.k.contains(Subspace::column_space(p.a_gamma[t])))
      fail("image(gamma - I) not inside K", {{"gamma", to_json(g)}});
    if (!p.kernel.pointwise_fixed_by(g)) fail("ker A_x not fixed by gamma", {{"gamma", to_json(g)}});
  }
  if (!p.k.contains(p.image)) fail("image(A_x) not inside K");
  if (p.kernel.dim() + p.image.dim() != n || p.kernel.intersect(p.image).dim() != 0)
    fail("ker A_x + im A_x is not a direct sum decomposition");
  return p;
}

CocycleReport cocycle_identities(const InvariantProjection& proj) {
  CocycleReport r;
  if (proj.a_gamma.empty()) return r;
  const auto& grp = proj.n.parent();
  const auto& mem = proj.n.members();
  auto a_of = [&](std::size_t parent_idx) -> const Matrix& {
    auto it = std::lower_bound(mem.begin(), mem.end(), parent_idx);
    return proj.a_gamma[static_cast<std::size_t>(it - mem.begin())];
  };
  for (std::size_t s = 0; s < mem.size(); ++s)
    for (std::size_t t = 0; t < mem.size(); ++t) {
      const Matrix& g = grp->element(mem[s]);
      const Matrix& d = grp->element(mem[t]);
      const Matrix& ag = proj.a_gamma[s];
      const Matrix& ad = proj.a_gamma[t];
      const Matrix& agd = a_of(grp->product(mem[s], mem[t]));
      ++r.pairs_checked;
      bool ok = agd == ag + g * ad && agd == ad + ag * d && agd == ad + ag + ag * ad;
      if (!ok && r.all_hold) {
        r.all_hold = false;
        r.failing_pair = std::make_pair(g, d);
      }
    }
  return r;
}

FaithfulnessReport faithfulness_check(const PreimageModel& model) {
  FaithfulnessReport r;
  Subgroup n = kernel_of(model.germ.theta);
  r.n_order = n.order();
  r.g_order = model.g.order();
  r.intersection_order = n.intersect(model.g).order();
  std::vector<std::size_t> cosets;
  for (auto i : n.members()) cosets.push_back(model.gamma_s.coset_of(i));
  std::sort(cosets.begin(), cosets.end());
  r.injective = std::adjacent_find(cosets.begin(), cosets.end()) == cosets.end();
  return r;
}

RealTargetReport real_target_structure(const PreimageModel& model) {
  const MapGerm& germ = model.germ;
  if (germ.target.dim != 1 || germ.target.group->order() != 1)
    throw InputError("/target", "real target structure needs a 1-dimensional target with trivial group");
  RealTargetReport r;
  const auto& grp = germ.source.group;
  r.group_trivial = grp->order() == 1;
  r.gamma_s_equals_gamma = model.gamma_s.order() == grp->order() && model.g.is_trivial();
  InvariantProjection proj = invariant_projection(germ);
  r.fixed_line = proj.kernel;
  r.fixed_line_pointwise_fixed = true;
  for (const auto& m : grp->elements())
    if (!proj.kernel.pointwise_fixed_by(m)) r.fixed_line_pointwise_fixed = false;
  r.image_equals_k = proj.image == model.kernel;
  r.stratum_dim = fixed_subspace(*grp).dim();
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::possible: return "possible";
    case Verdict::impossible: return "impossible";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

namespace {

// Basis of {L : L gamma = theta(gamma) L for every generator gamma}.
std::vector<Matrix> equivariant_linear_maps(const LocalChart& source, const LocalChart& target, const GroupHom& theta) {
  const std::size_t k = target.dim, n = source.dim, unknowns = k * n;
  std::vector<Vector> eqs;
  const auto& gens = source.group->generators();
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const Matrix& g = gens[s];
    const Matrix& t = target.group->element(theta(source.group->generator_indices()[s]));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Vector row = zero_vector(unknowns);
        for (std::size_t c = 0; c < n; ++c) row[a * n + c] += g(c, b);
        for (std::size_t c = 0; c < k; ++c) row[c * n + b] -= t(a, c);
        if (!is_zero(row)) eqs.push_back(std::move(row));
      }
  }
  Subspace ns = Subspace::null_space(Matrix::from_rows(eqs, unknowns));
  std::vector<Matrix> out;
  for (const auto& v : ns.basis()) out.emplace_back(k, n, v);
  return out;
}

bool regular_witness(const LocalChart& source, const LocalChart& target, const GroupHom& theta, const MultiPoly& lift) {
  try {
    MapGerm g = build_germ(source, target, lift, theta, zero_vector(source.dim));
    return rank(g.lift.jacobian(g.base_point)) == target.dim;
  } catch (const CheckFailure&) {
    return false;
  }
}

}  // namespace

ObstructionCertificate obstruction_certificate(const LocalChart& source, const LocalChart& target,
                                               const GroupHom& theta, const std::optional<MultiPoly>& candidate) {
  if (theta.source() != source.group || theta.target() != target.group)
    throw std::invalid_argument("theta does not run between the chart groups");
  ObstructionCertificate c;
  Subgroup n = kernel_of(theta);
  c.n_order = n.order();

  if (source.dim < target.dim) {
    c.verdict = Verdict::impossible;
    c.reason = "dimension";
    c.detail = "source dimension below target dimension: the Jacobian can never be surjective";
    return c;
  }
  c.kernel_dim_needed = source.dim - target.dim;
  if (c.kernel_dim_needed == 0 && !n.is_trivial()) {
    c.verdict = Verdict::impossible;
    c.reason = "a";
    c.detail = "ker theta has order " + std::to_string(n.order()) +
               " but would have to act faithfully and effectively on a 0-dimensional space";
    return c;
  }
  if (c.kernel_dim_needed > 0 && c.kernel_dim_needed < source.dim) {
    auto search = find_invariant_subspace(*source.group, c.kernel_dim_needed);
    const bool none = search.status == SearchStatus::certified_none;
    c.subspace_search = std::move(search);
    if (none) {
      c.verdict = Verdict::impossible;
      c.reason = "b";
      c.detail = "no invariant subspace of dimension " + std::to_string(c.kernel_dim_needed) +
                 " exists, so the kernel of the Jacobian cannot exist";
      return c;
    }
  }

  if (candidate && regular_witness(source, target, theta, *candidate)) {
    c.verdict = Verdict::possible;
    c.reason = "witness";
    c.witness_lift = *candidate;
    c.detail = "supplied lift is equivariant with surjective Jacobian at the center";
    return c;
  }
  auto maps = equivariant_linear_maps(source, target, theta);
  std::vector<Matrix> tries = maps;
  if (!maps.empty()) {
    Matrix sum(target.dim, source.dim);
    for (const auto& m : maps) sum += m;
    tries.push_back(sum);
    std::mt19937_64 rng(kDefaultSplitSeed);
    for (int r = 0; r < 8; ++r) {
      Matrix comb(target.dim, source.dim);
      for (const auto& m : maps) comb += Rational(static_cast<long>(rng() % 7) - 3) * m;
      tries.push_back(comb);
    }
  }
  for (const auto& l : tries) {
    if (rank(l) != target.dim) continue;
    MultiPoly lift = MultiPoly::affine(l, zero_vector(target.dim));
    if (!regular_witness(source, target, theta, lift)) continue;
    c.verdict = Verdict::possible;
    c.reason = "witness";
    c.witness_lift = lift;
    c.detail = "equivariant surjective linear map";
    return c;
  }
  c.verdict = Verdict::unknown;
  c.reason = "no_witness";
  c.detail = "no obstruction certified and no witness germ found";
  return c;
}

ReplacementReport lift_replacement_invariance(const MapGerm& germ, std::size_t eta) {
  const Matrix& e = germ.target.group->element(eta);
  GroupHom theta = conjugate_homomorphism(germ.theta, eta);
  MapGerm companion = build_germ(germ.source, germ.target, germ.lift.left_multiply(e), theta, germ.base_point);
  ReplacementReport r{companion, false, false};
  r.kernels_equal = Subspace::null_space(germ.lift.jacobian(germ.base_point)) ==
                    Subspace::null_space(companion.lift.jacobian(companion.base_point));
  r.n_equal = kernel_of(germ.theta) == kernel_of(companion.theta);
  return r;
}

}  // namespace orbi
