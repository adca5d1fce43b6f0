#include "orbi/representation.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "orbi/upoly.hpp"

namespace orbi {
namespace {

// Null space of the commutation system X g - g X = 0 over the given matrices.
std::vector<Matrix> commutant_of(const std::vector<Matrix>& gens, std::size_t d) {
  const std::size_t unknowns = d * d;
  std::vector<Vector> eqs;
  for (const auto& g : gens) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        Vector row = zero_vector(unknowns);
        for (std::size_t k = 0; k < d; ++k) {
          row[a * d + k] += g(k, b);
          row[k * d + b] -= g(a, k);
        }
        if (!is_zero(row)) eqs.push_back(std::move(row));
      }
  }
  Subspace ns = Subspace::null_space(Matrix::from_rows(eqs, unknowns));
  std::vector<Matrix> out;
  for (const auto& v : ns.basis()) out.emplace_back(d, d, v);
  return out;
}

Matrix combination(const std::vector<Matrix>& basis, const Vector& coef) {
  Matrix m(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coef[i].is_zero()) m += coef[i] * basis[i];
  return m;
}

// Elements of span(basis) with form * X symmetric.
std::vector<Matrix> self_adjoint_part(const std::vector<Matrix>& basis, const Matrix& form) {
  if (basis.empty()) return {};
  const std::size_t d = form.rows();
  std::vector<Matrix> bx;
  for (const auto& c : basis) bx.push_back(form * c);
  std::vector<Vector> eqs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Vector row(basis.size());
      for (std::size_t t = 0; t < basis.size(); ++t) row[t] = bx[t](i, j) - bx[t](j, i);
      if (!is_zero(row)) eqs.push_back(std::move(row));
    }
  Subspace ns = Subspace::null_space(Matrix::from_rows(eqs, basis.size()));
  std::vector<Matrix> out;
  for (const auto& v : ns.basis()) out.push_back(combination(basis, v));
  return out;
}

Matrix form_of(const std::vector<Matrix>& elements, std::size_t d) {
  Matrix b(d, d);
  for (const auto& g : elements) b += g.transpose() * g;
  return b;
}

Subspace lift(const Subspace& piece_coords, const Subspace& piece) {
  const Matrix& p = piece.basis_matrix();
  std::vector<Vector> vs;
  for (const auto& c : piece_coords.basis()) {
    Vector v = zero_vector(piece.ambient_dim());
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) v = v + c[i] * p.row(i);
    vs.push_back(std::move(v));
  }
  return Subspace::span(piece.ambient_dim(), vs);
}

class Splitter {
 public:
  Splitter(const FiniteMatrixGroup& g, std::uint64_t seed) : g_(g), rng_(seed), form_(invariant_form(g)) {}

  void run(const Subspace& w) {
    if (w.dim() == 0) return;
    if (w.dim() == 1) return leaf(w, true);

    std::vector<Matrix> gens;
    for (const auto& m : g_.generators()) gens.push_back(w.restrict(m));
    auto comm = commutant_of(gens, w.dim());
    if (comm.size() == 1) return leaf(w, true);
    const Matrix& p = w.basis_matrix();
    Matrix form = p * form_ * p.transpose();
    auto sym = self_adjoint_part(comm, form);
    if (sym.size() == 1) return leaf(w, true);

    std::vector<Matrix> candidates = comm;
    candidates.insert(candidates.end(), sym.begin(), sym.end());
    for (const auto* basis : {&sym, &comm})
      for (int r = 0; r < kRandomCombos; ++r) {
        Vector coef;
        for (std::size_t i = 0; i < basis->size(); ++i) coef.emplace_back(static_cast<long>(rng_() % 7) - 3);
        candidates.push_back(combination(*basis, coef));
      }

    for (const auto& x : candidates) {
      auto factors = charpoly_factor(x);
      if (factors.size() < 2) continue;
      // Primary decomposition: the generalized eigenspaces of x are invariant.
      for (const auto& f : factors) {
        UPoly power = UPoly::constant(1);
        for (unsigned k = 0; k < f.multiplicity; ++k) power = power * f.poly;
        run(lift(Subspace::null_space(power(x)), w));
      }
      return;
    }
    leaf(w, false);
  }

  Decomposition result(std::uint64_t seed) {
    std::vector<std::size_t> order(pieces_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (pieces_[a].pivots() != pieces_[b].pivots()) return pieces_[a].pivots() < pieces_[b].pivots();
      return pieces_[a] < pieces_[b];
    });
    Decomposition d;
    d.seed = seed;
    for (auto i : order) {
      d.pieces.push_back(pieces_[i]);
      d.irreducible.push_back(irreducible_[i]);
    }
    return d;
  }

 private:
  static constexpr int kRandomCombos = 6;

  void leaf(const Subspace& w, bool irreducible) {
    pieces_.push_back(w);
    irreducible_.push_back(irreducible);
  }

  const FiniteMatrixGroup& g_;
  std::mt19937_64 rng_;
  Matrix form_;
  std::vector<Subspace> pieces_;
  std::vector<bool> irreducible_;
};

// Earliest subset (in piece order) whose dimensions add up to k.
std::optional<std::vector<std::size_t>> subset_with_dim(const std::vector<Subspace>& pieces, std::size_t k) {
  std::set<std::pair<std::size_t, std::size_t>> dead;
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t i, std::size_t rem) {
    if (rem == 0) return true;
    if (i == pieces.size() || dead.count({i, rem})) return false;
    if (pieces[i].dim() <= rem) {
      chosen.push_back(i);
      if (dfs(i + 1, rem - pieces[i].dim())) return true;
      chosen.pop_back();
    }
    if (dfs(i + 1, rem)) return true;
    dead.insert({i, rem});
    return false;
  };
  if (dfs(0, k)) return chosen;
  return std::nullopt;
}

}  // namespace

std::vector<Matrix> commutant(const FiniteMatrixGroup& g) { return commutant_of(g.generators(), g.dim()); }

Matrix invariant_form(const FiniteMatrixGroup& g) { return form_of(g.elements(), g.dim()); }

std::vector<Matrix> symmetric_commutant(const FiniteMatrixGroup& g) {
  return self_adjoint_part(commutant(g), invariant_form(g));
}

bool Decomposition::fully_resolved() const {
  return std::all_of(irreducible.begin(), irreducible.end(), [](bool b) { return b; });
}

Decomposition decompose(const FiniteMatrixGroup& g, std::uint64_t seed) {
  Splitter s(g, seed);
  s.run(Subspace::full(g.dim()));
  return s.result(seed);
}

InvariantSubspaceResult find_invariant_subspace(const FiniteMatrixGroup& g, std::size_t dim_wanted,
                                                std::uint64_t seed) {
  if (dim_wanted == 0 || dim_wanted >= g.dim())
    throw std::invalid_argument("find_invariant_subspace: need 0 < dim_wanted < dim");
  InvariantSubspaceResult r;
  r.commutant_dim = commutant(g).size();
  if (r.commutant_dim == 1) {
    r.status = SearchStatus::certified_none;
    r.reason = "commutant_dim_1";
    r.decomposition.pieces = {Subspace::full(g.dim())};
    r.decomposition.irreducible = {true};
    r.decomposition.seed = seed;
    return r;
  }
  r.decomposition = decompose(g, seed);
  if (auto pick = subset_with_dim(r.decomposition.pieces, dim_wanted)) {
    Subspace s = Subspace::zero(g.dim());
    for (auto i : *pick) s = s + r.decomposition.pieces[i];
    for (const auto& m : g.generators())
      if (!s.is_invariant_under(m)) throw std::logic_error("assembled subspace is not invariant");
    r.status = SearchStatus::found;
    r.subspace = std::move(s);
    return r;
  }
  if (r.decomposition.fully_resolved()) {
    r.status = SearchStatus::certified_none;
    r.reason = "irreducible_decomposition";
  } else {
    r.status = SearchStatus::none_found;
    r.reason = "unresolved_pieces";
  }
  return r;
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none_found: return "none found";
    case SearchStatus::certified_none: return "certified none";
  }
  return "?";
}

}  // namespace orbi
