#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "orbi/matrix.hpp"
#include "orbi/multipoly.hpp"
#include "orbi/subspace.hpp"

namespace orbi {

using json = nlohmann::json;

// Rationals travel as strings ("3/4", "-2") so nothing passes through a double.
json to_json(const Rational& r);
json to_json(const Vector& v);
json to_json(const Matrix& m);
/// {"dim": d, "basis": [[...], ...]} with the canonical echelon basis.
json to_json(const Subspace& s);
/// [{"coef": "c", "exps": [..]}, ...]
json to_json(const Polynomial& p);
/// One term list per output coordinate.
json to_json(const MultiPoly& p);

// Parsers throw InputError carrying the JSON-pointer path of the bad field.
// Integers are accepted in place of rational strings; floating-point numbers
// are rejected.
Rational parse_rational(const json& j, const std::string& path);
Vector parse_vector(const json& j, const std::string& path, std::optional<std::size_t> length = std::nullopt);
Matrix parse_matrix(const json& j, const std::string& path, std::optional<std::size_t> rows = std::nullopt,
                    std::optional<std::size_t> cols = std::nullopt);
std::vector<Matrix> parse_matrix_list(const json& j, const std::string& path, std::size_t dim);
MultiPoly parse_multipoly(const json& j, const std::string& path, std::size_t num_vars,
                          std::optional<std::size_t> out_dim = std::nullopt);

/// Field access with path-carrying errors.
const json& require(const json& obj, const std::string& key, const std::string& path);
std::size_t parse_count(const json& j, const std::string& path);
bool parse_bool(const json& j, const std::string& path);
std::string parse_string(const json& j, const std::string& path);

}  // namespace orbi
