#include "orbi/upoly.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace orbi {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::x() { return UPoly({Rational(0), Rational(1)}); }

UPoly UPoly::constant(const Rational& c) { return UPoly({c}); }

UPoly UPoly::from_roots(const std::vector<Rational>& roots) {
  UPoly p = constant(1);
  for (const auto& r : roots) p = p * UPoly({-r, Rational(1)});
  return p;
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return (Rational(1) / leading()) * (*this);
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * c_[i]);
  return UPoly(std::move(d));
}

Rational UPoly::operator()(const Rational& t) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Matrix UPoly::operator()(const Matrix& m) const {
  if (!m.is_square()) throw std::invalid_argument("polynomial of a non-square matrix");
  Matrix acc(m.rows(), m.cols());
  const Matrix id = Matrix::identity(m.rows());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * m + (*it) * id;
  return acc;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

UPoly operator*(const Rational& s, const UPoly& p) {
  std::vector<Rational> c = p.c_;
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = c_;
  const int dd = d.degree();
  if (degree() < dd) return {UPoly(), *this};
  std::vector<Rational> q(static_cast<std::size_t>(degree() - dd + 1));
  const Rational inv_lead = Rational(1) / d.leading();
  for (int k = degree() - dd; k >= 0; --k) {
    Rational coef = r[static_cast<std::size_t>(k + dd)] * inv_lead;
    q[static_cast<std::size_t>(k)] = coef;
    if (coef.is_zero()) continue;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k + j)] -= coef * d.c_[static_cast<std::size_t>(j)];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (i == 0 || !mag.is_one()) os << mag.str() << (i ? "*" : "");
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly charpoly(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  const Matrix id = Matrix::identity(n);
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    c[n - k] = -(a * m).trace() / Rational(static_cast<long>(k));
  }
  return UPoly(std::move(c));
}

namespace {

using ZPoly = std::vector<mpz_class>;  // low degree first, trimmed

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

ZPoly primitive_integer(const UPoly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) l = lcm(l, c.den());
  ZPoly z;
  for (const auto& c : f.coeffs()) z.push_back(c.num() * (l / c.den()));
  mpz_class g = 0;
  for (const auto& c : z) g = gcd(g, c);
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

UPoly to_upoly(const ZPoly& z) {
  std::vector<Rational> c;
  for (const auto& x : z) c.emplace_back(x);
  return UPoly(std::move(c));
}

mpz_class zeval(const ZPoly& p, long a) {
  mpz_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * a + *it;
  return acc;
}

// ---- arithmetic over F_p, used only to bound the degrees of rational factors

using FPoly = std::vector<long long>;

void ftrim(FPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long long fmodp(long long x, long long p) {
  x %= p;
  return x < 0 ? x + p : x;
}

long long finv(long long a, long long p) {
  long long r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

FPoly fmod_poly(FPoly a, const FPoly& m, long long p) {
  const int dm = static_cast<int>(m.size()) - 1;
  const long long inv = finv(m.back(), p);
  for (int k = static_cast<int>(a.size()) - 1; k >= dm; --k) {
    long long coef = a[static_cast<std::size_t>(k)] * inv % p;
    if (coef == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      auto idx = static_cast<std::size_t>(k - dm + j);
      a[idx] = fmodp(a[idx] - coef * m[static_cast<std::size_t>(j)], p);
    }
  }
  ftrim(a);
  return a;
}

FPoly fmul(const FPoly& a, const FPoly& b, long long p) {
  if (a.empty() || b.empty()) return {};
  FPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  ftrim(c);
  return c;
}

FPoly fgcd(FPoly a, FPoly b, long long p) {
  while (!b.empty()) {
    FPoly r = fmod_poly(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long long inv = finv(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

FPoly fdiv(FPoly a, const FPoly& m, long long p) {
  const int dm = static_cast<int>(m.size()) - 1;
  const int da = static_cast<int>(a.size()) - 1;
  if (da < dm) return {};
  FPoly q(static_cast<std::size_t>(da - dm + 1), 0);
  const long long inv = finv(m.back(), p);
  for (int k = da; k >= dm; --k) {
    long long coef = a[static_cast<std::size_t>(k)] * inv % p;
    q[static_cast<std::size_t>(k - dm)] = coef;
    if (coef == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      auto idx = static_cast<std::size_t>(k - dm + j);
      a[idx] = fmodp(a[idx] - coef * m[static_cast<std::size_t>(j)], p);
    }
  }
  ftrim(q);
  return q;
}

FPoly fpowmod(FPoly base, long long e, const FPoly& m, long long p) {
  FPoly r{1};
  base = fmod_poly(base, m, p);
  while (e) {
    if (e & 1) r = fmod_poly(fmul(r, base, p), m, p);
    base = fmod_poly(fmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// Degrees of the irreducible factors of z mod p, or nullopt when p divides
// the leading coefficient or z is not squarefree mod p.
std::optional<std::vector<int>> ddf_degrees(const ZPoly& z, long long p) {
  FPoly f;
  for (const auto& c : z) {
    mpz_class r = c % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    f.push_back(r.get_si());
  }
  if (f.back() == 0) return std::nullopt;
  ftrim(f);
  FPoly df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(static_cast<long long>(i) % p * f[i] % p);
  ftrim(df);
  if (df.empty() || fgcd(f, df, p).size() != 1) return std::nullopt;

  std::vector<int> degs;
  FPoly h{0, 1};
  int i = 0;
  while (static_cast<int>(f.size()) - 1 >= 2 * (i + 1)) {
    ++i;
    h = fpowmod(h, p, f, p);
    FPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = fmodp(hx[1] - 1, p);
    ftrim(hx);
    FPoly g = fgcd(hx.empty() ? FPoly{} : hx, f, p);
    if (hx.empty()) g = f;
    int dg = static_cast<int>(g.size()) - 1;
    if (dg > 0) {
      for (int k = 0; k < dg / i; ++k) degs.push_back(i);
      f = fdiv(f, g, p);
      h = fmod_poly(h, f, p);
    }
  }
  if (static_cast<int>(f.size()) - 1 > 0) degs.push_back(static_cast<int>(f.size()) - 1);
  return degs;
}

// Degrees a rational factor of z could have, intersected over several primes.
std::vector<bool> possible_factor_degrees(const ZPoly& z) {
  const int n = zdeg(z);
  std::vector<bool> allowed(static_cast<std::size_t>(n + 1), true);
  static const long long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  int used = 0;
  for (long long p : primes) {
    if (used >= 6) break;
    auto degs = ddf_degrees(z, p);
    if (!degs) continue;
    ++used;
    std::vector<bool> sums(static_cast<std::size_t>(n + 1), false);
    sums[0] = true;
    for (int d : *degs)
      for (int s = n; s >= d; --s)
        if (sums[static_cast<std::size_t>(s - d)]) sums[static_cast<std::size_t>(s)] = true;
    for (int s = 0; s <= n; ++s) allowed[static_cast<std::size_t>(s)] = allowed[static_cast<std::size_t>(s)] && sums[static_cast<std::size_t>(s)];
  }
  return allowed;
}

// Positive divisors of |v| (v != 0), or nullopt if |v| could not be factored.
std::optional<std::vector<mpz_class>> divisors(mpz_class v) {
  v = abs(v);
  std::vector<std::pair<mpz_class, int>> fac;
  for (unsigned long q = 2; q <= 100000 && q * q <= v; q += (q == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(v.get_mpz_t(), q)) {
      int e = 0;
      while (mpz_divisible_ui_p(v.get_mpz_t(), q)) {
        v /= q;
        ++e;
      }
      fac.emplace_back(mpz_class(q), e);
    }
  }
  if (v > 1) {
    if (v >= mpz_class("10000000000") && mpz_probab_prime_p(v.get_mpz_t(), 40) == 0) return std::nullopt;
    fac.emplace_back(v, 1);
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [prime, e] : fac) {
    std::size_t base = divs.size();
    mpz_class pw = 1;
    for (int k = 1; k <= e; ++k) {
      pw *= prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
    }
  }
  return divs;
}

constexpr double kCandidateBudget = 4.0e6;

// Kronecker's method: a primitive factor of z of exact degree d, if any.
std::optional<ZPoly> kronecker_factor(const ZPoly& z, int d) {
  struct Point {
    long a;
    mpz_class value;
    std::vector<mpz_class> divs;
  };
  const int n = zdeg(z);
  std::vector<Point> pts;
  const long range = 3L * n + 12;
  for (long a = -range; a <= range; ++a) {
    mpz_class v = zeval(z, a);
    if (v == 0) {
      // Integer root: x - a is a factor.
      if (d == 1) return ZPoly{mpz_class(-a), mpz_class(1)};
      continue;
    }
    auto ds = divisors(v);
    if (ds) pts.push_back({a, v, std::move(*ds)});
  }
  if (static_cast<int>(pts.size()) < d + 1) throw std::runtime_error("factorization: not enough evaluation points");
  std::stable_sort(pts.begin(), pts.end(), [](const Point& x, const Point& y) { return x.divs.size() < y.divs.size(); });
  pts.resize(static_cast<std::size_t>(d + 1));

  double combos = 1;
  for (std::size_t i = 0; i < pts.size(); ++i) combos *= static_cast<double>(pts[i].divs.size()) * (i ? 2.0 : 1.0);
  if (combos > kCandidateBudget) throw std::runtime_error("factorization: candidate budget exceeded");

  // Lagrange basis coefficients over the chosen points.
  const std::size_t m = pts.size();
  std::vector<std::vector<Rational>> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    UPoly li = UPoly::constant(1);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      li = li * UPoly({Rational(-pts[j].a), Rational(1)});
      li = (Rational(1) / Rational(pts[i].a - pts[j].a)) * li;
    }
    basis[i] = li.coeffs();
    basis[i].resize(m);
  }

  const UPoly zq = to_upoly(z);
  const mpz_class& lead = z.back();
  std::vector<std::size_t> idx(m, 0);
  std::vector<int> sgn(m, 1);
  while (true) {
    std::vector<Rational> coeffs(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational v(sgn[i] > 0 ? pts[i].divs[idx[i]] : mpz_class(-pts[i].divs[idx[i]]));
      for (std::size_t k = 0; k < m; ++k)
        if (!basis[i][k].is_zero()) coeffs[k] += v * basis[i][k];
    }
    bool ok = !coeffs[static_cast<std::size_t>(d)].is_zero();
    for (std::size_t k = 0; ok && k < m; ++k) ok = coeffs[k].is_integer();
    if (ok) ok = mpz_divisible_p(lead.get_mpz_t(), coeffs[static_cast<std::size_t>(d)].num().get_mpz_t()) != 0;
    if (ok) {
      UPoly g(coeffs);
      if (g.degree() == d && (zq % g).is_zero()) {
        ZPoly out;
        for (const auto& c : g.coeffs()) out.push_back(c.num());
        mpz_class cont = 0;
        for (const auto& c : out) cont = gcd(cont, c);
        if (out.back() < 0) cont = -cont;
        for (auto& c : out) c /= cont;
        return out;
      }
    }
    // Advance the mixed-radix counter: point 0 keeps a positive sign.
    std::size_t pos = 0;
    while (pos < m) {
      if (pos > 0 && sgn[pos] > 0) {
        sgn[pos] = -1;
        break;
      }
      sgn[pos] = 1;
      if (++idx[pos] < pts[pos].divs.size()) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == m) break;
  }
  return std::nullopt;
}

void factor_squarefree_integer(const ZPoly& z, std::vector<ZPoly>& out) {
  const int n = zdeg(z);
  if (n <= 1) {
    out.push_back(z);
    return;
  }
  std::vector<bool> allowed = possible_factor_degrees(z);
  for (int d = 1; d <= n / 2; ++d) {
    if (!allowed[static_cast<std::size_t>(d)]) continue;
    if (auto g = kronecker_factor(z, d)) {
      out.push_back(*g);
      UPoly q = to_upoly(z) / to_upoly(*g);
      factor_squarefree_integer(primitive_integer(q), out);
      return;
    }
  }
  out.push_back(z);
}

bool factor_less(const PolyFactor& a, const PolyFactor& b) {
  if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
  const auto& ca = a.poly.coeffs();
  const auto& cb = b.poly.coeffs();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

}  // namespace

std::vector<PolyFactor> factor_rational(const UPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  std::vector<PolyFactor> result;
  if (f.degree() == 0) return result;

  // Yun's squarefree decomposition.
  UPoly a = f.monic();
  UPoly b = a.derivative();
  UPoly c = gcd(a, b);
  UPoly w = a / c;
  UPoly y = b / c;
  unsigned mult = 1;
  std::vector<std::pair<UPoly, unsigned>> squarefree;
  while (w.degree() > 0) {
    UPoly z = y - w.derivative();
    UPoly g = gcd(w, z);
    if (g.degree() > 0) squarefree.emplace_back(g, mult);
    w = w / g;
    y = z / g;
    ++mult;
  }

  for (const auto& [part, m] : squarefree) {
    std::vector<ZPoly> irreducibles;
    factor_squarefree_integer(primitive_integer(part), irreducibles);
    for (const auto& z : irreducibles) result.push_back({to_upoly(z).monic(), m});
  }
  std::sort(result.begin(), result.end(), factor_less);
  return result;
}

std::vector<PolyFactor> charpoly_factor(const Matrix& m) { return factor_rational(charpoly(m)); }

std::size_t count_real_roots(const UPoly& p) {
  if (p.degree() <= 0) return 0;
  std::vector<UPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    UPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(Rational(-1) * r);
  }
  auto changes = [&](bool at_plus) {
    std::size_t count = 0;
    int prev = 0;
    for (const auto& q : seq) {
      int s = q.leading().sign();
      if (!at_plus && (q.degree() % 2 == 1)) s = -s;
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

}  // namespace orbi
