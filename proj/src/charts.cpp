#include "orbi/charts.hpp"

#include <algorithm>
#include <set>

#include "orbi/error.hpp"
#include "orbi/multipoly.hpp"
#include "orbi/serialize.hpp"

namespace orbi {

LocalChart chart_from_group(const GroupPtr& group, bool boundary) {
  LocalChart c{group->dim(), group, boundary};
  if (boundary) {
    if (c.dim == 0) throw InputError("/dim", "a boundary chart needs dim >= 1");
    const std::size_t n = c.dim;
    for (std::size_t i = 0; i < group->order(); ++i) {
      const Matrix& g = group->element(i);
      Vector last = g.row(n - 1);
      if (last != unit_vector(n, n - 1))
        throw CheckFailure("boundary",
                           "group element does not fix the boundary coordinate (last row must be 0,...,0,1)",
                           {{"element", to_json(g)}, {"last_row", to_json(last)}});
    }
  }
  return c;
}

LocalChart build_chart(std::size_t dim, const std::vector<Matrix>& generators, bool boundary,
                       std::size_t order_bound) {
  return chart_from_group(FiniteMatrixGroup::generate(dim, generators, order_bound), boundary);
}

LocalChart product_chart(const LocalChart& a, const LocalChart& b) {
  if (a.boundary && b.boundary) throw InputError("product of two boundary charts (corner models) is not supported");
  const LocalChart& first = a.boundary ? b : a;
  const LocalChart& second = a.boundary ? a : b;
  std::vector<Matrix> gens;
  for (const auto& g : first.group->generators()) gens.push_back(direct_sum(g, Matrix::identity(second.dim)));
  for (const auto& g : second.group->generators()) gens.push_back(direct_sum(Matrix::identity(first.dim), g));
  return chart_from_group(FiniteMatrixGroup::generate(a.dim + b.dim, gens), a.boundary || b.boundary);
}

bool in_domain(const LocalChart& chart, const Vector& point) {
  if (point.size() != chart.dim) return false;
  return !chart.boundary || point.back().sign() >= 0;
}

bool on_boundary(const LocalChart& chart, const Vector& point) {
  return chart.boundary && point.size() == chart.dim && point.back().is_zero();
}

Subgroup isotropy_at(const LocalChart& chart, const Vector& point) {
  if (point.size() != chart.dim)
    throw InputError("point has length " + std::to_string(point.size()) + ", chart dim is " + std::to_string(chart.dim));
  if (!in_domain(chart, point)) throw InputError("point lies outside the half-space x_n >= 0");
  return stabilizer(chart.group, point);
}

namespace {

Subspace boundary_hyperplane(std::size_t n) {
  Matrix e(1, n);
  e(0, n - 1) = 1;
  return Subspace::null_space(e);
}

// Fixed subspaces of single elements, closed under intersection, plus the full space.
std::set<Subspace> fixed_lattice(const LocalChart& chart) {
  const std::size_t n = chart.dim;
  std::set<Subspace> lat{Subspace::full(n)};
  for (std::size_t i = 1; i < chart.group->order(); ++i)
    lat.insert(Subspace::null_space(chart.group->element(i) - Matrix::identity(n)));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subspace> cur(lat.begin(), lat.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (lat.insert(cur[i].intersect(cur[j])).second) grew = true;
  }
  return lat;
}

// Deterministic point of `space` avoiding every subspace in `avoid`, with
// last coordinate of the requested sign (0: don't care, 1: positive).
std::optional<Vector> generic_point(const Subspace& space, const std::vector<Subspace>& avoid, int last_sign) {
  const auto basis = space.basis();
  const std::size_t n = space.ambient_dim();
  for (long k = 2; k < 40; ++k) {
    Vector v = zero_vector(n);
    Rational c(1);
    for (const auto& b : basis) {
      v = v + c * b;
      c *= Rational(k);
    }
    if (last_sign > 0 && n > 0) {
      if (v.back().is_zero()) continue;
      if (v.back().sign() < 0) v = Rational(-1) * v;
    }
    bool ok = std::none_of(avoid.begin(), avoid.end(), [&](const Subspace& s) { return s.contains(v); });
    if (ok) return v;
  }
  return std::nullopt;
}

}  // namespace

StrataReport stratify(const LocalChart& chart) {
  const std::size_t n = chart.dim;
  const auto lat = fixed_lattice(chart);
  const Subgroup whole = Subgroup::whole(chart.group);
  std::optional<Subspace> bd;
  if (chart.boundary) bd = boundary_hyperplane(n);

  StrataReport rep;
  auto add = [&](const Subgroup& h, const Subspace& f, std::size_t dim, bool boundary, Vector sample) {
    Stratum s{h, f, dim, n - dim, boundary, !h.is_trivial(), 0, std::move(sample)};
    rep.strata.push_back(std::move(s));
  };

  for (const auto& f : lat) {
    Subgroup h = pointwise_stabilizer(whole, f);
    std::vector<Subspace> smaller;
    for (const auto& g : lat)
      if (g.dim() < f.dim() && f.contains(g)) smaller.push_back(g);

    if (!chart.boundary) {
      add(h, f, f.dim(), false, generic_point(f, smaller, 0).value());
      continue;
    }
    const bool inside_bd = bd->contains(f);
    if (!inside_bd) add(h, f, f.dim(), false, generic_point(f, smaller, 1).value());
    Subspace fb = inside_bd ? f : f.intersect(*bd);
    bool covered = std::any_of(smaller.begin(), smaller.end(), [&](const Subspace& g) { return g.contains(fb); });
    if (!covered) add(h, f, fb.dim(), true, generic_point(fb, smaller, 0).value());
  }

  std::stable_sort(rep.strata.begin(), rep.strata.end(), [](const Stratum& a, const Stratum& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    if (a.boundary != b.boundary) return !a.boundary;
    return a.fixed < b.fixed;
  });

  // Orbit classes: g maps Fix(H) onto Fix(g H g^-1).
  std::size_t next = 0;
  std::vector<bool> assigned(rep.strata.size(), false);
  for (std::size_t i = 0; i < rep.strata.size(); ++i) {
    if (assigned[i]) continue;
    rep.strata[i].orbit_class = next;
    assigned[i] = true;
    for (std::size_t j = i + 1; j < rep.strata.size(); ++j) {
      if (assigned[j] || rep.strata[j].boundary != rep.strata[i].boundary || rep.strata[j].dim != rep.strata[i].dim)
        continue;
      for (std::size_t g = 0; g < chart.group->order(); ++g)
        if (rep.strata[i].fixed.image_under(chart.group->element(g)) == rep.strata[j].fixed) {
          rep.strata[j].orbit_class = next;
          assigned[j] = true;
          break;
        }
    }
    ++next;
  }
  return rep;
}

std::vector<const Stratum*> StrataReport::singular() const& {
  std::vector<const Stratum*> out;
  for (const auto& s : strata)
    if (s.singular) out.push_back(&s);
  return out;
}

std::optional<Stratum> interior_codim1_stratum(const LocalChart& chart) {
  for (const auto& s : stratify(chart).strata)
    if (s.singular && !s.boundary && s.codim == 1) return s;
  return std::nullopt;
}

bool has_interior_codim1_stratum(const LocalChart& chart) { return interior_codim1_stratum(chart).has_value(); }

Subgroup subgroup_from_matrices(const GroupPtr& g, const std::vector<Matrix>& ms) {
  std::vector<std::size_t> idx{0};
  for (std::size_t i = 0; i < ms.size(); ++i) {
    auto j = g->index_of(ms[i]);
    if (!j) throw InputError("/" + std::to_string(i), "matrix is not an element of the group");
    idx.push_back(*j);
  }
  return Subgroup(g, idx);
}

SuborbifoldLocalModel suborbifold_model(const LocalChart& chart, const Subspace& subspace, const Subgroup& lambda) {
  if (subspace.ambient_dim() != chart.dim) throw InputError("/subspace", "ambient dimension does not match chart");
  if (lambda.parent() != chart.group) throw std::invalid_argument("lambda is not a subgroup of the chart group");
  for (auto i : lambda.members()) {
    const Matrix& g = chart.group->element(i);
    for (const auto& v : subspace.basis()) {
      Vector gv = g * v;
      if (!subspace.contains(gv))
        throw CheckFailure("not_invariant", "subspace is not invariant under lambda",
                           {{"gamma", to_json(g)}, {"v", to_json(v)}, {"gamma_v", to_json(gv)}});
    }
  }
  SuborbifoldLocalModel m;
  m.chart = chart;
  m.subspace = subspace;
  m.lambda = lambda;
  m.omega = pointwise_stabilizer(lambda, subspace);
  m.lambda_group = lambda.as_group();
  m.intrinsic = quotient(subgroup_from_matrices(m.lambda_group, m.omega.matrices()));
  for (std::size_t c = 1; c < m.intrinsic.order(); ++c) {
    const Matrix& rep = m.lambda_group->element(m.intrinsic.cosets()[c].front());
    if (subspace.pointwise_fixed_by(rep)) throw std::logic_error("intrinsic isotropy does not act effectively");
  }
  m.full = lambda.is_whole();
  return m;
}

ChartEmbedding verify_embedding(const LocalChart& source, const LocalChart& target, const Matrix& linear,
                                const Vector& translate, const std::vector<Matrix>& theta_gen_images) {
  if (linear.rows() != target.dim || linear.cols() != source.dim)
    throw InputError("/linear", "expected a " + std::to_string(target.dim) + "x" + std::to_string(source.dim) + " matrix");
  if (translate.size() != target.dim) throw InputError("/translate", "length must equal the target dimension");

  auto kir = kernel_image_rank(linear);
  if (kir.rank != source.dim)
    throw CheckFailure("not_injective", "linear part of the embedding is not injective",
                       {{"kernel_vector", to_json(kir.kernel.basis().front())}});

  GroupHom theta = verify_homomorphism(source.group, target.group, theta_gen_images);
  if (!theta.is_injective()) {
    for (std::size_t i = 1; i < source.group->order(); ++i)
      if (theta(i) == 0)
        throw CheckFailure("theta_not_injective", "theta is not injective",
                           {{"kernel_element", to_json(source.group->element(i))}});
  }

  // Domain compatibility for half-space models.
  const std::size_t n = target.dim;
  if (source.boundary && !target.boundary)
    throw CheckFailure("domain", "a boundary chart cannot embed into a chart without boundary", json::object());
  if (target.boundary) {
    Vector last = linear.row(n - 1);
    if (source.boundary) {
      bool normal = translate.back().is_zero() && last.back().sign() > 0;
      for (std::size_t j = 0; j + 1 < source.dim; ++j) normal = normal && last[j].is_zero();
      if (!normal)
        throw CheckFailure("domain", "embedding must send the boundary hyperplane to the boundary and keep x_n >= 0",
                           {{"last_row", to_json(last)}, {"translate", to_json(translate)}});
    } else if (translate.back().sign() <= 0) {
      // Charts are germs at their centers: the center has to land in the interior.
      throw CheckFailure("domain", "an open chart must be centered in the interior x_n > 0",
                         {{"translate", to_json(translate)}});
    }
  }

  MultiPoly psi = MultiPoly::affine(linear, translate);
  for (std::size_t i = 0; i < source.group->order(); ++i) {
    const Matrix& g = source.group->element(i);
    const Matrix& tg = target.group->element(theta(i));
    MultiPoly residual = psi.compose_linear(g) - psi.left_multiply(tg);
    if (residual.is_identically_zero()) continue;
    Vector y = zero_vector(source.dim);
    if (is_zero(residual.eval(y)))
      for (std::size_t k = 0; k < source.dim; ++k)
        if (!is_zero(residual.eval(unit_vector(source.dim, k)))) {
          y = unit_vector(source.dim, k);
          break;
        }
    throw CheckFailure("not_equivariant", "embedding is not equivariant with respect to theta",
                       {{"gamma", to_json(g)},
                        {"theta_gamma", to_json(tg)},
                        {"y", to_json(y)},
                        {"psi_gamma_y", to_json(psi.eval(g * y))},
                        {"theta_gamma_psi_y", to_json(tg * psi.eval(y))},
                        {"residual", to_json(residual)}});
  }

  // Isotropy consistency at sampled points: theta(Stab(y)) must fix psi(y).
  std::vector<Vector> samples{zero_vector(source.dim)};
  for (std::size_t k = 0; k < source.dim; ++k) samples.push_back(unit_vector(source.dim, k));
  Vector mixed;
  for (std::size_t k = 0; k < source.dim; ++k) mixed.emplace_back(Rational(static_cast<long>(k) + 1, 3));
  samples.push_back(mixed);
  for (const auto& y : samples) {
    if (!in_domain(source, y)) continue;
    Vector x = linear * y + translate;
    const Subgroup stab = stabilizer(source.group, y);
    for (auto i : stab.members())
      if (target.group->element(theta(i)) * x != x)
        throw CheckFailure("isotropy_mismatch", "theta(Stab(y)) does not fix psi(y)",
                           {{"y", to_json(y)}, {"gamma", to_json(source.group->element(i))}});
  }

  return ChartEmbedding{source, target, linear, translate, std::move(theta)};
}

}  // namespace orbi
