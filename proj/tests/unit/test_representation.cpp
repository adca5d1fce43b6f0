#include <doctest.h>

#include "helpers.hpp"
#include "orbi/representation.hpp"
#include "orbi/upoly.hpp"

using namespace orbi;
using testing::vec;

namespace {

const Matrix kRot3{{0, -1}, {1, -1}};
const Matrix kRot4{{0, -1}, {1, 0}};

// S3 on the sum-zero plane of Q^3, coordinates e1 - e2, e2 - e3.
GroupPtr s3_standard() {
  Matrix swap12{{-1, 1}, {0, 1}};
  return FiniteMatrixGroup::generate(2, {swap12, kRot3});
}

bool commutes_with_group(const Matrix& m, const FiniteMatrixGroup& g) {
  for (const auto& x : g.elements())
    if (!(m * x == x * m)) return false;
  return true;
}

}  // namespace

TEST_CASE("commutant examples") {
  CHECK(commutant(*FiniteMatrixGroup::trivial(2)).size() == 4);
  auto z4 = FiniteMatrixGroup::generate(2, {kRot4});
  auto c = commutant(*z4);
  CHECK(c.size() == 2);
  for (const auto& m : c) CHECK(commutes_with_group(m, *z4));
  auto s3 = s3_standard();
  CHECK(s3->order() == 6);
  CHECK(commutant(*s3).size() == 1);
}

TEST_CASE("invariant form is preserved") {
  for (const auto& g : {s3_standard(), FiniteMatrixGroup::generate(2, {kRot3})}) {
    Matrix b = invariant_form(*g);
    CHECK(b == b.transpose());
    for (const auto& x : g->elements()) CHECK(x.transpose() * b * x == b);
    for (const auto& m : symmetric_commutant(*g)) CHECK(b * m == (b * m).transpose());
  }
}

TEST_CASE("find_invariant_subspace examples") {
  SUBCASE("scalars: any line") {
    auto g = FiniteMatrixGroup::generate(2, {Matrix::diag(vec({-1, -1}))});
    auto r = find_invariant_subspace(*g, 1);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.subspace->dim() == 1);
  }
  SUBCASE("order-3 rotation: certified none") {
    auto g = FiniteMatrixGroup::generate(2, {kRot3});
    auto r = find_invariant_subspace(*g, 1);
    CHECK(r.status == SearchStatus::certified_none);
    CHECK_FALSE(r.subspace.has_value());
  }
  SUBCASE("reflection: an eigenline") {
    auto g = FiniteMatrixGroup::generate(2, {Matrix::diag(vec({1, -1}))});
    auto r = find_invariant_subspace(*g, 1);
    REQUIRE(r.status == SearchStatus::found);
    bool eig = *r.subspace == Subspace::span(2, {vec({1, 0})}) || *r.subspace == Subspace::span(2, {vec({0, 1})});
    CHECK(eig);
  }
}

TEST_CASE("a found subspace is invariant and has the requested dimension") {
  std::vector<GroupPtr> groups = {
      FiniteMatrixGroup::generate(3, {Matrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}}),
      FiniteMatrixGroup::generate(3, {Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, Matrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}),
      FiniteMatrixGroup::generate(4, {direct_sum(kRot4, kRot4)}),
      FiniteMatrixGroup::generate(4, {direct_sum(kRot3, Matrix::diag(vec({-1, 1})))}),
  };
  for (const auto& g : groups) {
    for (std::size_t k = 1; k < g->dim(); ++k) {
      auto r = find_invariant_subspace(*g, k);
      if (r.status != SearchStatus::found) continue;
      CHECK(r.subspace->dim() == k);
      for (const auto& x : g->elements()) CHECK(r.subspace->is_invariant_under(x));
    }
  }
  // The 3-cycle permutation action splits as a fixed line plus an
  // irreducible plane: lines and planes exist.
  CHECK(find_invariant_subspace(*groups[0], 1).status == SearchStatus::found);
  CHECK(find_invariant_subspace(*groups[0], 2).status == SearchStatus::found);
}

TEST_CASE("x^4 + 1 rotation: real planes exist but none is rational") {
  // The order-8 companion matrix of x^4 + 1 is irreducible over Q but splits
  // over R into two planes with irrational coordinates. No certificate of
  // absence may be issued.
  Matrix c{{0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  auto g = FiniteMatrixGroup::generate(4, {c});
  CHECK(g->order() == 8);
  auto two = find_invariant_subspace(*g, 2);
  CHECK(two.status == SearchStatus::none_found);
  // Lines: x^4 + 1 has no real root, so no invariant line exists at all.
  auto one = find_invariant_subspace(*g, 1);
  CHECK(one.status != SearchStatus::found);
}

TEST_CASE("decomposition pieces span the space and are invariant") {
  auto g = FiniteMatrixGroup::generate(3, {Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, Matrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}});
  Decomposition d = decompose(*g);
  Subspace sum = Subspace::zero(3);
  std::size_t total = 0;
  for (const auto& p : d.pieces) {
    for (const auto& x : g->elements()) CHECK(p.is_invariant_under(x));
    sum = sum + p;
    total += p.dim();
  }
  CHECK(total == 3);
  CHECK(sum == Subspace::full(3));
  CHECK(d.fully_resolved());
  // Same seed, same answer.
  Decomposition again = decompose(*g);
  CHECK(again.pieces == d.pieces);
}
