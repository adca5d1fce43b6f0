#include "orbi/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace orbi {

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t i) {
  if (i >= num_vars) throw std::out_of_range("variable index out of range");
  Polynomial p(num_vars);
  Exponents e(num_vars, 0);
  e[i] = 1;
  p.add_term(e, Rational(1));
  return p;
}

void Polynomial::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != nvars_) throw std::invalid_argument("exponent vector length != number of variables");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational Polynomial::eval(const Vector& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  Rational sum;
  for (const auto& [exps, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_ && !t.is_zero(); ++i)
      for (unsigned k = 0; k < exps[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable out of range");
  Polynomial d(nvars_);
  for (const auto& [exps, c] : terms_) {
    if (exps[var] == 0) continue;
    Exponents e = exps;
    --e[var];
    d.add_term(e, c * Rational(static_cast<long>(exps[var])));
  }
  return d;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [exps, c] : terms_) {
    int s = 0;
    for (auto e : exps) s += static_cast<int>(e);
    d = std::max(d, s);
  }
  return d;
}

std::vector<std::size_t> Polynomial::variables_used() const {
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < nvars_; ++i)
    for (const auto& [exps, c] : terms_)
      if (exps[i] > 0) {
        used.push_back(i);
        break;
      }
  return used;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& subs, std::size_t target_vars) const {
  if (subs.size() != nvars_) throw std::invalid_argument("substitution arity mismatch");
  for (const auto& s : subs)
    if (s.num_vars() != target_vars) throw std::invalid_argument("substitutes disagree on variable count");
  // Cached powers of each substitute.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target_vars, Rational(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * subs[i]);
    return cache[k];
  };
  Polynomial out(target_vars);
  for (const auto& [exps, c] : terms_) {
    Polynomial t = Polynomial::constant(target_vars, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps[i] > 0) t = t * power(i, exps[i]);
    out += t;
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  Polynomial p(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<Exponents, Rational>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) {
    unsigned dx = 0, dy = 0;
    for (auto v : x.first) dx += v;
    for (auto v : y.first) dy += v;
    return dx > dy;
  });
  for (const auto& [exps, c] : ts) {
    bool constant = std::all_of(exps.begin(), exps.end(), [](unsigned k) { return k == 0; });
    Rational mag = abs(c);
    os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
    bool need_star = false;
    if (constant || !mag.is_one()) {
      os << mag.str();
      need_star = true;
    }
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      os << (need_star ? "*" : "") << "x" << i + 1;
      if (exps[i] > 1) os << "^" << exps[i];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

MultiPoly::MultiPoly(std::size_t num_vars, std::vector<Polynomial> components)
    : nvars_(num_vars), comps_(std::move(components)) {
  for (const auto& c : comps_)
    if (c.num_vars() != nvars_) throw std::invalid_argument("component variable count mismatch");
}

MultiPoly MultiPoly::zero(std::size_t num_vars, std::size_t out_dim) {
  return MultiPoly(num_vars, std::vector<Polynomial>(out_dim, Polynomial(num_vars)));
}

MultiPoly MultiPoly::affine(const Matrix& linear, const Vector& translate) {
  if (translate.size() != linear.rows()) throw std::invalid_argument("affine map: translation length mismatch");
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < linear.rows(); ++i) {
    Polynomial p = Polynomial::constant(linear.cols(), translate[i]);
    for (std::size_t j = 0; j < linear.cols(); ++j)
      if (!linear(i, j).is_zero()) p += linear(i, j) * Polynomial::variable(linear.cols(), j);
    comps.push_back(std::move(p));
  }
  return MultiPoly(linear.cols(), std::move(comps));
}

Vector MultiPoly::eval(const Vector& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("polynomial map arity mismatch");
  Vector out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.eval(point));
  return out;
}

Matrix MultiPoly::jacobian(const Vector& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("polynomial map arity mismatch");
  Matrix j(comps_.size(), nvars_);
  for (std::size_t i = 0; i < comps_.size(); ++i)
    for (std::size_t k = 0; k < nvars_; ++k) j(i, k) = comps_[i].derivative(k).eval(point);
  return j;
}

std::vector<Polynomial> MultiPoly::jacobian_symbolic() const {
  std::vector<Polynomial> out;
  for (const auto& c : comps_)
    for (std::size_t k = 0; k < nvars_; ++k) out.push_back(c.derivative(k));
  return out;
}

bool MultiPoly::is_identically_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

MultiPoly MultiPoly::compose_affine(const Matrix& linear, const Vector& translate) const {
  if (linear.rows() != nvars_) throw std::invalid_argument("compose: inner map output != variable count");
  MultiPoly inner = affine(linear, translate);
  std::vector<Polynomial> comps;
  for (const auto& c : comps_) comps.push_back(c.substitute(inner.comps_, linear.cols()));
  return MultiPoly(linear.cols(), std::move(comps));
}

MultiPoly MultiPoly::compose_linear(const Matrix& linear) const {
  return compose_affine(linear, zero_vector(linear.rows()));
}

MultiPoly MultiPoly::left_multiply(const Matrix& m) const {
  if (m.cols() != comps_.size()) throw std::invalid_argument("left multiply: shape mismatch");
  std::vector<Polynomial> comps(m.rows(), Polynomial(nvars_));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) comps[i] += m(i, j) * comps_[j];
  return MultiPoly(nvars_, std::move(comps));
}

MultiPoly MultiPoly::restrict_to_last_hyperplane() const {
  if (nvars_ == 0) throw std::invalid_argument("restriction of a map with no variables");
  Matrix inclusion(nvars_, nvars_ - 1);
  for (std::size_t i = 0; i + 1 < nvars_; ++i) inclusion(i, i) = 1;
  return compose_linear(inclusion);
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_ || a.comps_.size() != b.comps_.size())
    throw std::invalid_argument("polynomial map shape mismatch");
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < a.comps_.size(); ++i) comps.push_back(a.comps_[i] - b.comps_[i]);
  return MultiPoly(a.nvars_, std::move(comps));
}

std::string MultiPoly::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < comps_.size(); ++i) s += (i ? ", " : "") + comps_[i].str();
  return s + ")";
}

}  // namespace orbi
