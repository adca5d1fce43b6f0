#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbi/groups.hpp"

namespace orbi {

constexpr std::uint64_t kDefaultSplitSeed = 0x5eed0f1b;

/// Basis of {M : M g = g M for every g}, from the null space of the
/// commutation equations on the generators.
std::vector<Matrix> commutant(const FiniteMatrixGroup& g);

/// B = sum over the group of g^T g; positive definite and g^T B g = B.
Matrix invariant_form(const FiniteMatrixGroup& g);

/// Commutant elements that are self-adjoint for the invariant form
/// (B M symmetric). Dimension 1 exactly when the action is irreducible
/// over the reals.
std::vector<Matrix> symmetric_commutant(const FiniteMatrixGroup& g);

/// Splitting of the space into invariant rational subspaces. Pieces tagged
/// irreducible are irreducible over the reals; the rest could not be split
/// further with rational arithmetic (their real splitting needs irrational
/// coordinates).
struct Decomposition {
  std::vector<Subspace> pieces;
  std::vector<bool> irreducible;
  std::uint64_t seed = 0;

  bool fully_resolved() const;
};

Decomposition decompose(const FiniteMatrixGroup& g, std::uint64_t seed = kDefaultSplitSeed);

enum class SearchStatus { found, none_found, certified_none };

struct InvariantSubspaceResult {
  SearchStatus status = SearchStatus::none_found;
  std::optional<Subspace> subspace;
  /// "commutant_dim_1", "irreducible_decomposition" for certified results;
  /// "unresolved_pieces" for none_found; empty when found.
  std::string reason;
  std::size_t commutant_dim = 0;
  Decomposition decomposition;
};

/// Looks for a g-invariant subspace of dimension dim_wanted (0 < dim_wanted < dim).
/// A returned subspace is re-verified against every generator.
InvariantSubspaceResult find_invariant_subspace(const FiniteMatrixGroup& g, std::size_t dim_wanted,
                                                std::uint64_t seed = kDefaultSplitSeed);

std::string to_string(SearchStatus s);

}  // namespace orbi
