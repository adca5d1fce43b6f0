#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbi/matrix.hpp"

namespace orbi {

/// Univariate polynomial over Q, coefficients stored low degree first with no
/// trailing zeros (the zero polynomial has no coefficients).
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly x();
  static UPoly constant(const Rational& c);
  /// Monic polynomial with the given roots.
  static UPoly from_roots(const std::vector<Rational>& roots);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  UPoly monic() const;
  UPoly derivative() const;
  Rational operator()(const Rational& t) const;
  Matrix operator()(const Matrix& m) const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& s, const UPoly& p);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  UPoly operator%(const UPoly& d) const { return divmod(d).second; }
  UPoly operator/(const UPoly& d) const { return divmod(d).first; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd (zero if both inputs are zero).
UPoly gcd(UPoly a, UPoly b);

/// det(xI - m).
UPoly charpoly(const Matrix& m);

struct PolyFactor {
  UPoly poly;  // monic, irreducible over Q
  unsigned multiplicity = 0;
};

/// Factorization of a nonzero polynomial into monic irreducibles over Q
/// (the leading coefficient is dropped). Factors are sorted by degree, then
/// coefficients. Throws std::runtime_error when the search budget for a single
/// squarefree factor of high degree is exhausted.
std::vector<PolyFactor> factor_rational(const UPoly& f);

/// Factorization of the characteristic polynomial of a square matrix.
std::vector<PolyFactor> charpoly_factor(const Matrix& m);

/// Number of distinct real roots (Sturm sequence).
std::size_t count_real_roots(const UPoly& p);

}  // namespace orbi
