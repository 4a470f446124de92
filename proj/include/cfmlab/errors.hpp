#pragma once
#include <stdexcept>
#include <string>

namespace cfmlab {

// Argument outside the mathematical domain of an operation (non-positive
// reserve or price, negative amount).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Requested trade cannot be served by the pool (output at or beyond the
// feasibility cap).
class InfeasibleTrade : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A quote applied to a pool state it was not produced against.
class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid or missing configuration; carries the offending key.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key, const std::string& what)
    : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace cfmlab
