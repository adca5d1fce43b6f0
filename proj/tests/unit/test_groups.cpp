#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "orbi/error.hpp"
#include "orbi/charts.hpp"
#include "orbi/upoly.hpp"

using namespace orbi;
using testing::vec;

namespace {

const Matrix kRot3{{0, -1}, {1, -1}};
const Matrix kRot4{{0, -1}, {1, 0}};

GroupPtr z2xz2() { return FiniteMatrixGroup::generate(2, {Matrix::diag(vec({-1, 1})), Matrix::diag(vec({1, -1}))}); }

// Every subgroup of g, by closing up subsets generated by at most two elements.
std::vector<Subgroup> small_subgroups(const GroupPtr& g) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<Subgroup> out;
  for (std::size_t a = 0; a < g->order(); ++a)
    for (std::size_t b = a; b < g->order(); ++b) {
      Subgroup h = Subgroup::generated_by(g, {a, b});
      if (seen.insert(h.members()).second) out.push_back(h);
    }
  return out;
}

}  // namespace

TEST_CASE("closure examples") {
  CHECK(FiniteMatrixGroup::generate(1, {Matrix{{-1}}})->order() == 2);
  CHECK(z2xz2()->order() == 4);
  auto c3 = FiniteMatrixGroup::generate(2, {kRot3});
  CHECK(c3->order() == 3);
  CHECK(kRot3.pow(3).is_identity());
  CHECK(c3->element(0).is_identity());
}

TEST_CASE("closure errors") {
  CHECK_THROWS_AS(FiniteMatrixGroup::generate(2, {Matrix{{1, 1}, {0, 1}}}, 50), CheckFailure);
  CHECK_THROWS_AS(FiniteMatrixGroup::generate(2, {Matrix{{1, 0}, {0, 0}}}), InputError);
  CHECK_THROWS_AS(FiniteMatrixGroup::generate(2, {Matrix{{1}}}), InputError);
}

TEST_CASE("multiplication table and inverses are consistent") {
  auto g = FiniteMatrixGroup::generate(3, {Matrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}});
  for (std::size_t a = 0; a < g->order(); ++a) {
    CHECK(g->element(g->inverse(a)) * g->element(a) == Matrix::identity(3));
    for (std::size_t b = 0; b < g->order(); ++b)
      CHECK(g->element(g->product(a, b)) == g->element(a) * g->element(b));
  }
  for (std::size_t k = 1; k < g->order(); ++k) {
    auto [s, e] = g->spanning_words()[k];
    CHECK(e < k);
    CHECK(g->element(k) == g->generators()[s] * g->element(e));
  }
}

TEST_CASE("verify_homomorphism examples") {
  auto z2 = FiniteMatrixGroup::generate(1, {Matrix{{-1}}});
  SUBCASE("identity Z2 -> Z2") {
    GroupHom h = verify_homomorphism(z2, z2, std::vector<Matrix>{Matrix{{-1}}});
    CHECK(h.is_injective());
    CHECK(kernel_of(h).is_trivial());
  }
  SUBCASE("Z4 -> Z2") {
    auto z4 = FiniteMatrixGroup::generate(2, {kRot4});
    GroupHom h = verify_homomorphism(z4, z2, std::vector<Matrix>{Matrix{{-1}}});
    Subgroup k = kernel_of(h);
    CHECK(k.order() == 2);
    CHECK(k.contains(*z4->index_of(kRot4.pow(2))));
  }
  SUBCASE("Z3 -> Z2 fails") {
    auto c3 = FiniteMatrixGroup::generate(2, {kRot3});
    try {
      verify_homomorphism(c3, z2, std::vector<Matrix>{Matrix{{-1}}});
      FAIL("expected CheckFailure");
    } catch (const CheckFailure& e) {
      CHECK(e.code() == "not_a_homomorphism");
      CHECK_FALSE(e.witness().empty());
    }
  }
  SUBCASE("everything to a trivial group") {
    auto g = z2xz2();
    GroupHom h = trivial_homomorphism(g, FiniteMatrixGroup::trivial(1));
    CHECK(kernel_of(h).is_whole());
    CHECK(image_of(h).is_trivial());
  }
}

TEST_CASE("quotient examples") {
  auto g = z2xz2();
  Subgroup diag = subgroup_from_matrices(g, {Matrix::diag(vec({-1, -1}))});
  CHECK(quotient(diag).order() == 2);
  QuotientGroup by_trivial = quotient(Subgroup::trivial(g));
  CHECK(by_trivial.order() == 4);
  CHECK(quotient(Subgroup::whole(g)).order() == 1);
  // Coset multiplication agrees with the parent table.
  QuotientGroup q = quotient(diag);
  for (std::size_t a = 0; a < g->order(); ++a)
    for (std::size_t b = 0; b < g->order(); ++b)
      CHECK(q.coset_of(g->product(a, b)) == q.product(q.coset_of(a), q.coset_of(b)));
}

TEST_CASE("quotient by a non-normal subgroup fails") {
  auto s3 = FiniteMatrixGroup::generate(3, {Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, Matrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}});
  Subgroup swap = Subgroup::generated_by(s3, {s3->generator_indices()[0]});
  CHECK_FALSE(swap.is_normal());
  CHECK_THROWS_AS(quotient(swap), CheckFailure);
}

TEST_CASE("fixed_subspace examples") {
  auto g = z2xz2();
  CHECK(fixed_subspace(Subgroup::trivial(g)) == Subspace::full(2));
  auto refl = FiniteMatrixGroup::generate(2, {Matrix::diag(vec({1, -1}))});
  CHECK(fixed_subspace(*refl) == Subspace::span(2, {vec({1, 0})}));
  auto pm = FiniteMatrixGroup::generate(2, {Matrix::diag(vec({-1, -1}))});
  CHECK(fixed_subspace(*pm).dim() == 0);
}

TEST_CASE("index2_subgroups examples") {
  auto z2 = FiniteMatrixGroup::generate(1, {Matrix{{-1}}});
  auto s = index2_subgroups(z2);
  REQUIRE(s.size() == 1);
  CHECK(s[0].is_trivial());
  CHECK(index2_subgroups(FiniteMatrixGroup::generate(2, {kRot3})).empty());
  auto k = index2_subgroups(z2xz2());
  CHECK(k.size() == 3);
  for (const auto& h : k) CHECK(h.order() == 2);
  CHECK(index2_subgroups(FiniteMatrixGroup::generate(2, {kRot4})).size() == 1);
}

TEST_CASE("Lagrange and normality of kernels across small groups") {
  std::vector<GroupPtr> groups = {
      z2xz2(),
      FiniteMatrixGroup::generate(2, {kRot4, Matrix::diag(vec({1, -1}))}),
      FiniteMatrixGroup::generate(3, {Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, Matrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}),
  };
  auto z2 = FiniteMatrixGroup::generate(1, {Matrix{{-1}}});
  for (const auto& g : groups) {
    for (const auto& h : small_subgroups(g)) {
      CHECK(g->order() % h.order() == 0);
      if (h.is_normal()) CHECK(quotient(h).order() * h.order() == g->order());
    }
    // Kernels of every homomorphism to Z2 are invariant under conjugation.
    for (const auto& h : index2_subgroups(g)) {
      for (std::size_t x = 0; x < g->order(); ++x) CHECK(h.conjugate(x) == h);
    }
    GroupHom det = verify_homomorphism(g, z2, [&] {
      std::vector<Matrix> imgs;
      for (const auto& gen : g->generators()) {
        Rational d = charpoly(gen).coeff(0);
        if (gen.rows() % 2 == 1) d = -d;
        imgs.push_back(Matrix{{d}});
      }
      return imgs;
    }());
    Subgroup ker = kernel_of(det);
    CHECK(ker.is_normal());
    CHECK(ker.order() * image_of(det).order() == g->order());
  }
}

TEST_CASE("pointwise stabilizer and stabilizer") {
  auto g = z2xz2();
  Subgroup pw = pointwise_stabilizer(Subgroup::whole(g), Subspace::span(2, {vec({1, 0})}));
  CHECK(pw.order() == 2);
  CHECK(pw.contains(*g->index_of(Matrix::diag(vec({1, -1})))));
  CHECK(stabilizer(g, vec({0, 0})).is_whole());
  CHECK(stabilizer(g, vec({1, 1})).is_trivial());
}
