#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "orbi/error.hpp"
#include "orbi/serialize.hpp"
#include "orbi/subspace.hpp"
#include "orbi/upoly.hpp"

using namespace orbi;
using testing::monomial;
using testing::vec;

TEST_CASE("rational parsing and normal form") {
  CHECK(Rational::parse("6/4") == Rational(3) / Rational(2));
  CHECK(Rational::parse("-2/4").str() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("-2/-4"), InputError);
  CHECK(Rational::parse("+7").str() == "7");
  CHECK(Rational::parse("0/5").is_zero());
  CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
  CHECK_THROWS_AS(Rational::parse("1.5"), InputError);
  CHECK_THROWS_AS(Rational::parse(""), InputError);
  CHECK_THROWS_AS(Rational::parse("1/"), InputError);
  CHECK(Rational::from_double(0.25, 1000000) == Rational(1) / Rational(4));
}

TEST_CASE("json rationals reject floats and report the path") {
  json j = {{"m", {{"1", "2/3"}, {0, "x"}}}};
  try {
    parse_matrix(j["m"], "/m");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.path() == "/m/1/1");
  }
  CHECK_THROWS_AS(parse_rational(json(0.5), "/v"), InputError);
  CHECK(parse_rational(json(-3), "/v") == Rational(-3));
  Matrix m{{1, Rational(2) / Rational(3)}, {0, -1}};
  CHECK(parse_matrix(to_json(m), "") == m);
}

TEST_CASE("kernel_image_rank examples") {
  SUBCASE("1x2 [2, 0]") {
    auto r = kernel_image_rank(Matrix{{2, 0}});
    CHECK(r.rank == 1);
    CHECK(r.kernel == Subspace::span(2, {vec({0, 1})}));
    CHECK(r.image == Subspace::full(1));
  }
  SUBCASE("zero 3x3") {
    auto r = kernel_image_rank(Matrix(3, 3));
    CHECK(r.rank == 0);
    CHECK(r.kernel == Subspace::full(3));
    CHECK(r.image.dim() == 0);
  }
  SUBCASE("identity 3x3") {
    auto r = kernel_image_rank(Matrix::identity(3));
    CHECK(r.rank == 3);
    CHECK(r.kernel.dim() == 0);
  }
}

TEST_CASE("rank-nullity and kernel membership on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix m = testing::random_matrix(rng, r, c, -2, 2);
    auto kir = kernel_image_rank(m);
    CHECK(kir.kernel.dim() + kir.rank == c);
    CHECK(kir.image.dim() == kir.rank);
    for (const auto& v : kir.kernel.basis()) CHECK(is_zero(m * v));
    for (std::size_t j = 0; j < c; ++j) CHECK(kir.image.contains(m.col(j)));
  }
}

TEST_CASE("subspace canonical form") {
  auto a = Subspace::span(3, {vec({1, 1, 0}), vec({0, 1, 0})});
  auto b = Subspace::span(3, {vec({1, 0, 0}), vec({2, 5, 0}), vec({3, 3, 0})});
  CHECK(a == b);
  CHECK(a.annihilator() == Subspace::span(3, {vec({0, 0, 1})}));
  CHECK(a.intersect(Subspace::span(3, {vec({0, 1, 1}), vec({1, 0, 1})})) == Subspace::span(3, {vec({1, -1, 0})}));
}

TEST_CASE("charpoly factor examples") {
  SUBCASE("order-3 companion") {
    auto f = charpoly_factor(Matrix{{0, -1}, {1, -1}});
    REQUIRE(f.size() == 1);
    CHECK(f[0].poly == UPoly({1, 1, 1}));
    CHECK(f[0].multiplicity == 1);
  }
  SUBCASE("diag(1,-1)") {
    auto f = charpoly_factor(Matrix::diag(vec({1, -1})));
    REQUIRE(f.size() == 2);
    CHECK(f[0].poly * f[1].poly == UPoly({-1, 0, 1}));
    CHECK(f[0].multiplicity == 1);
  }
  SUBCASE("identity") {
    auto f = charpoly_factor(Matrix::identity(2));
    REQUIRE(f.size() == 1);
    CHECK(f[0].poly == UPoly({-1, 1}));
    CHECK(f[0].multiplicity == 2);
  }
}

TEST_CASE("charpoly factors multiply back and vanish on the matrix") {
  // Oracle: expand the product of factors and compare with an independent
  // Faddeev-LeVerrier charpoly; Cayley-Hamilton on the matrix itself.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 4;
    Matrix m = testing::random_matrix(rng, n, n, -2, 2);
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix acc(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
      acc = m * (acc + c[n - k + 1] * Matrix::identity(n));
      c[n - k] = -acc.trace() / Rational(static_cast<long>(k));
    }
    UPoly expected(c);
    CHECK(charpoly(m) == expected);
    UPoly prod = UPoly::constant(1);
    for (const auto& f : factor_rational(expected))
      for (unsigned i = 0; i < f.multiplicity; ++i) prod = prod * f.poly;
    CHECK(prod == expected);
    CHECK(expected(m).is_zero());
  }
}

TEST_CASE("factor_rational irreducibility spot checks") {
  auto f = factor_rational(UPoly({1, 0, 0, 0, 1}));  // x^4 + 1
  REQUIRE(f.size() == 1);
  CHECK(f[0].poly.degree() == 4);
  auto g = factor_rational(UPoly({-1, 0, 0, 0, 0, 0, 1}));  // x^6 - 1
  CHECK(g.size() == 4);
}

TEST_CASE("sturm real root counts") {
  CHECK(count_real_roots(UPoly({1, 1, 1})) == 0);
  CHECK(count_real_roots(UPoly({-1, 0, 1})) == 2);
  CHECK(count_real_roots(UPoly({0, 0, 1})) == 1);
  CHECK(count_real_roots(UPoly::from_roots({-3, 0, Rational(1) / Rational(2), 7})) == 4);
}

TEST_CASE("poly_eval examples") {
  Polynomial p = monomial(2, {2, 0}) + monomial(2, {0, 2});
  CHECK(p.eval({Rational(3) / Rational(2), 0}) == Rational(9) / Rational(4));
  Polynomial q = monomial(2, {1, 1}, 5) + Polynomial::constant(2, -7);
  CHECK(q.eval({0, 0}) == Rational(-7));
  CHECK(monomial(1, {2}).eval({-2}) == Rational(4));
}

TEST_CASE("poly_jacobian examples") {
  MultiPoly sq(1, {monomial(1, {2})});
  CHECK(sq.jacobian({1}) == Matrix{{2}});
  MultiPoly x(2, {Polynomial::variable(2, 0)});
  CHECK(x.jacobian({5, -3}) == Matrix{{1, 0}});
  MultiPoly r(2, {monomial(2, {2, 0}) + monomial(2, {0, 2})});
  CHECK(r.jacobian({1, 0}) == Matrix{{2, 0}});
}

TEST_CASE("jacobian agrees with exact difference quotients") {
  // For a polynomial, (f(x + h e_j) - f(x - h e_j)) / 2h converges to the
  // derivative with error O(h^2); compare at h = 1/10^6 within 1/10^3.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial f(3);
    for (int t = 0; t < 4; ++t)
      f.add_term({unsigned(ex(rng)), unsigned(ex(rng)), unsigned(ex(rng))}, coef(rng));
    MultiPoly m(3, {f});
    Vector x{coef(rng), coef(rng), Rational(coef(rng)) / Rational(2)};
    Matrix jac = m.jacobian(x);
    Rational h = Rational(1) / Rational(1000000);
    for (std::size_t j = 0; j < 3; ++j) {
      Vector xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      Rational fd = (f.eval(xp) - f.eval(xm)) / (Rational(2) * h);
      CHECK(abs(fd - jac(0, j)) < Rational(1) / Rational(1000));
    }
  }
}

TEST_CASE("poly_identity_zero examples") {
  MultiPoly sq(1, {monomial(1, {2})});
  Matrix neg{{-1}};
  CHECK((sq.compose_linear(neg) - sq).is_identically_zero());
  MultiPoly x(1, {Polynomial::variable(1, 0)});
  MultiPoly diff = x.compose_linear(neg) - x;
  CHECK_FALSE(diff.is_identically_zero());
  CHECK(diff[0] == monomial(1, {1}, -2));
  CHECK(MultiPoly::zero(2, 3).is_identically_zero());
}

TEST_CASE("affine composition and hyperplane restriction") {
  MultiPoly r(2, {monomial(2, {2, 0}) + monomial(2, {0, 1})});
  MultiPoly shifted = r.compose_affine(Matrix::identity(2), {1, 0});
  CHECK(shifted.eval({0, 3}) == r.eval({1, 3}));
  MultiPoly b = r.restrict_to_last_hyperplane();
  CHECK(b.num_vars() == 1);
  CHECK(b[0] == monomial(1, {2}));
}
