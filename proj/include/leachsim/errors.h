#pragma once

#include <stdexcept>
#include <string>

namespace leachsim {

/// Invalid configuration; `key()` names the offending setting when known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& detail, std::string key = {})
      : std::runtime_error(key.empty() ? detail : key + ": " + detail),
        key_(std::move(key)),
        detail_(detail) {}

  const std::string& key() const noexcept { return key_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string key_;
  std::string detail_;
};

/// Argument outside the domain of a model function (negative bits, bad ordering, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& message, std::string path)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace leachsim
