#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "orbi/matrix.hpp"

namespace orbi {

using Exponents = std::vector<unsigned>;

/// Scalar polynomial in a fixed number of variables with rational
/// coefficients. Zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : nvars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t i);

  std::size_t num_vars() const noexcept { return nvars_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Adds c * x^exps, merging with an existing term.
  void add_term(const Exponents& exps, const Rational& c);

  Rational eval(const Vector& point) const;
  Polynomial derivative(std::size_t var) const;
  /// Total degree (-1 for the zero polynomial).
  int degree() const;
  /// Indices of the variables that actually occur.
  std::vector<std::size_t> variables_used() const;
  /// Substitutes x_i -> subs[i]; every substitute has target_vars variables.
  Polynomial substitute(const std::vector<Polynomial>& subs, std::size_t target_vars) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, Polynomial p) { return p *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  std::size_t nvars_ = 0;
  std::map<Exponents, Rational> terms_;
};

/// Polynomial map Q^num_vars -> Q^out_dim (a lift f~ in chart coordinates).
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(std::size_t num_vars, std::vector<Polynomial> components);
  static MultiPoly zero(std::size_t num_vars, std::size_t out_dim);
  /// y -> linear * y + translate.
  static MultiPoly affine(const Matrix& linear, const Vector& translate);

  std::size_t num_vars() const noexcept { return nvars_; }
  std::size_t out_dim() const noexcept { return comps_.size(); }
  const std::vector<Polynomial>& components() const noexcept { return comps_; }
  const Polynomial& operator[](std::size_t i) const { return comps_.at(i); }

  /// Exact evaluation. Throws std::invalid_argument on arity mismatch.
  Vector eval(const Vector& point) const;
  /// out_dim x num_vars matrix of partial derivatives at point.
  Matrix jacobian(const Vector& point) const;
  /// Symbolic partial derivatives, row-major out_dim x num_vars.
  std::vector<Polynomial> jacobian_symbolic() const;
  /// True iff every component is the zero polynomial.
  bool is_identically_zero() const;

  /// this(linear * y + translate), a map in linear.cols() variables.
  MultiPoly compose_affine(const Matrix& linear, const Vector& translate) const;
  /// this(linear * y).
  MultiPoly compose_linear(const Matrix& linear) const;
  /// m * this(y).
  MultiPoly left_multiply(const Matrix& m) const;
  /// Restriction to the hyperplane {x_last = 0}, in the remaining variables.
  MultiPoly restrict_to_last_hyperplane() const;

  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.comps_ == b.comps_;
  }

  std::string str() const;

 private:
  std::size_t nvars_ = 0;
  std::vector<Polynomial> comps_;
};

}  // namespace orbi
