#pragma once

#include <random>
#include <vector>

#include "orbi/matrix.hpp"
#include "orbi/multipoly.hpp"

namespace testing {

using orbi::Matrix;
using orbi::Rational;
using orbi::Vector;

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline Vector vec(std::initializer_list<int> xs) {
  Vector v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

// x_0^e0 x_1^e1 ... with coefficient c.
inline orbi::Polynomial monomial(std::size_t nvars, std::vector<unsigned> exps, const Rational& c = 1) {
  orbi::Polynomial p(nvars);
  p.add_term(exps, c);
  return p;
}

}  // namespace testing
