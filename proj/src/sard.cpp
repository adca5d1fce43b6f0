#include <algorithm>
#include <random>
#include <set>

#include "orbi/error.hpp"
#include "orbi/germs.hpp"
#include "orbi/upoly.hpp"

namespace orbi {

namespace {

// Univariate view of a polynomial that uses at most the variable `var`.
UPoly as_univariate(const Polynomial& p, std::size_t var) {
  std::vector<Rational> c;
  for (const auto& [e, coef] : p.terms()) {
    unsigned k = p.num_vars() ? e[var] : 0;
    if (c.size() <= k) c.resize(k + 1);
    c[k] += coef;
  }
  return UPoly(std::move(c));
}

struct SeparableSolver {
  std::vector<UPoly> f;       // one per target coordinate
  std::vector<UPoly> df;
  std::vector<bool> constant;

  explicit SeparableSolver(const MultiPoly& lift) {
    for (const auto& comp : lift.components()) {
      auto used = comp.variables_used();
      std::size_t var = used.empty() ? 0 : used.front();
      UPoly u = as_univariate(comp, var);
      constant.push_back(used.empty());
      df.push_back(u.derivative());
      f.push_back(std::move(u));
    }
  }

  // The preimage of p is the product of the root sets of f_i - p_i over the
  // distinct variables (free variables range over R). p is critical iff that
  // set is nonempty and some coordinate has a root where f_i' vanishes.
  bool critical(const Vector& p) const {
    bool degenerate = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
      UPoly g = f[i] - UPoly::constant(p[i]);
      if (constant[i]) {
        if (!g.is_zero()) return false;
        degenerate = true;
        continue;
      }
      if (count_real_roots(g) == 0) return false;
      UPoly common = gcd(g, df[i]);
      if (common.degree() >= 1 && count_real_roots(common) > 0) degenerate = true;
    }
    return degenerate;
  }
};

}  // namespace

bool is_separable(const MultiPoly& lift) {
  std::set<std::size_t> seen;
  for (const auto& comp : lift.components()) {
    auto used = comp.variables_used();
    if (used.size() > 1) return false;
    if (used.size() == 1 && !seen.insert(used.front()).second) return false;
  }
  return true;
}

SardReport sard_sample(const MapGerm& germ, const SardOptions& opts) {
  const std::size_t k = germ.target.dim;
  if (opts.box.size() != k)
    throw InputError("/box", "expected one interval per target coordinate (" + std::to_string(k) + ")");
  for (const auto& [lo, hi] : opts.box)
    if (!(lo <= hi)) throw InputError("/box", "interval lower bound exceeds upper bound");
  if (opts.snap_denominator <= 0) throw InputError("/snap_denominator", "must be positive");

  SardReport r;
  r.samples = opts.samples;
  std::optional<SeparableSolver> solver;
  std::set<Vector> table;
  if (opts.table) {
    r.method = "table";
    for (std::size_t i = 0; i < opts.table->size(); ++i) {
      const auto& e = (*opts.table)[i];
      const std::string path = "/critical_values/" + std::to_string(i);
      if (e.value.size() != k || e.lift.size() != germ.source.dim) throw InputError(path, "wrong vector length");
      if (germ.lift.eval(e.lift) != e.value) throw InputError(path + "/lift", "lift does not map to the value");
      if (rank(germ.lift.jacobian(e.lift)) == k)
        throw InputError(path + "/lift", "Jacobian is surjective here; the value is not shown to be critical");
      table.insert(e.value);
    }
  } else if (is_separable(germ.lift)) {
    r.method = "separable";
    solver.emplace(germ.lift);
  } else {
    throw InputError("/lift", "lift is not separable; supply a table of critical values");
  }

  std::mt19937_64 rng(opts.seed);
  std::set<Vector> found;
  Vector p(k);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      // 53 random bits -> [0, 1); avoids implementation-defined distributions.
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      double x = opts.box[i].first + u * (opts.box[i].second - opts.box[i].first);
      p[i] = Rational::from_double(x, opts.snap_denominator);
    }
    bool crit = solver ? solver->critical(p) : table.count(p) > 0;
    if (crit)
      found.insert(p);
    else
      ++r.regular;
  }
  r.regular_fraction = r.samples ? static_cast<double>(r.regular) / static_cast<double>(r.samples) : 1.0;
  r.critical_values.assign(found.begin(), found.end());
  return r;
}

}  // namespace orbi
