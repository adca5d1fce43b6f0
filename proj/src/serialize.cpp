#include "orbi/serialize.hpp"

#include "orbi/error.hpp"

namespace orbi {

json to_json(const Rational& r) { return r.str(); }

json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json to_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

json to_json(const Subspace& s) {
  json basis = json::array();
  for (const auto& v : s.basis()) basis.push_back(to_json(v));
  return {{"dim", s.dim()}, {"basis", basis}};
}

json to_json(const Polynomial& p) {
  json a = json::array();
  for (const auto& [e, c] : p.terms()) a.push_back({{"coef", c.str()}, {"exps", e}});
  return a;
}

json to_json(const MultiPoly& p) {
  json a = json::array();
  for (const auto& c : p.components()) a.push_back(to_json(c));
  return a;
}

Rational parse_rational(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(path, e.what());
    }
  }
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<unsigned long long>())));
    return Rational(static_cast<long long>(j.get<long long>()));
  }
  if (j.is_number_float())
    throw InputError(path, "floating-point number not allowed; write the rational as a string like \"3/4\"");
  throw InputError(path, "expected a rational (string \"p/q\" or integer)");
}

Vector parse_vector(const json& j, const std::string& path, std::optional<std::size_t> length) {
  if (!j.is_array()) throw InputError(path, "expected an array of rationals");
  if (length && j.size() != *length)
    throw InputError(path, "expected length " + std::to_string(*length) + ", got " + std::to_string(j.size()));
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(parse_rational(j[i], path + "/" + std::to_string(i)));
  }
  return v;
}

Matrix parse_matrix(const json& j, const std::string& path, std::optional<std::size_t> rows,
                    std::optional<std::size_t> cols) {
  if (!j.is_array()) throw InputError(path, "expected a matrix (array of rows)");
  if (rows && j.size() != *rows)
    throw InputError(path, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(j.size()));
  std::vector<Vector> rs;
  std::optional<std::size_t> width = cols;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rs.push_back(parse_vector(j[i], path + "/" + std::to_string(i), width));
    width = rs.back().size();
  }
  return Matrix::from_rows(rs, width.value_or(0));
}

std::vector<Matrix> parse_matrix_list(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) throw InputError(path, "expected an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_matrix(j[i], path + "/" + std::to_string(i), dim, dim));
  return out;
}

namespace {

Polynomial parse_terms(const json& j, const std::string& path, std::size_t num_vars) {
  if (!j.is_array()) throw InputError(path, "expected an array of terms");
  Polynomial p(num_vars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "/" + std::to_string(t);
    const json& term = j[t];
    if (!term.is_object()) throw InputError(tp, "expected {\"coef\": ..., \"exps\": [...]}");
    Rational c = parse_rational(require(term, "coef", tp), tp + "/coef");
    const json& ex = require(term, "exps", tp);
    if (!ex.is_array() || ex.size() != num_vars)
      throw InputError(tp + "/exps", "expected " + std::to_string(num_vars) + " exponents");
    Exponents e;
    for (std::size_t k = 0; k < ex.size(); ++k) {
      if (!ex[k].is_number_integer() || ex[k].get<long long>() < 0 || ex[k].get<long long>() > 64)
        throw InputError(tp + "/exps/" + std::to_string(k), "exponent must be an integer in [0, 64]");
      e.push_back(static_cast<unsigned>(ex[k].get<long long>()));
    }
    p.add_term(e, c);
  }
  return p;
}

}  // namespace

MultiPoly parse_multipoly(const json& j, const std::string& path, std::size_t num_vars,
                          std::optional<std::size_t> out_dim) {
  if (!j.is_array()) throw InputError(path, "expected one term list per output coordinate");
  if (out_dim && j.size() != *out_dim)
    throw InputError(path, "expected " + std::to_string(*out_dim) + " output coordinates, got " +
                               std::to_string(j.size()));
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < j.size(); ++i) comps.push_back(parse_terms(j[i], path + "/" + std::to_string(i), num_vars));
  return MultiPoly(num_vars, std::move(comps));
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path + "/" + key, "missing required field");
  return *it;
}

std::size_t parse_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

bool parse_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw InputError(path, "expected true or false");
  return j.get<bool>();
}

std::string parse_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  return j.get<std::string>();
}

}  // namespace orbi
