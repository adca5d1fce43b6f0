#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace orbi {

/// Malformed input: bad rational literal, wrong shape, schema violation.
/// `path` locates the offending field (JSON-pointer style) when known.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& msg)
      : std::runtime_error(path.empty() ? msg : path + ": " + msg), path_(std::move(path)) {}
  explicit InputError(const std::string& msg) : InputError("", msg) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A mathematical check failed (non-equivariant lift, non-normal subgroup,
/// critical point where a regular one was required, ...). The witness carries
/// enough data to re-verify the failure independently.
class CheckFailure : public std::runtime_error {
 public:
  CheckFailure(std::string code, const std::string& msg, nlohmann::json witness = nlohmann::json::object())
      : std::runtime_error(msg), code_(std::move(code)), witness_(std::move(witness)) {}

  const std::string& code() const noexcept { return code_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  std::string code_;
  nlohmann::json witness_;
};

}  // namespace orbi
