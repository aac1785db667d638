#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qproxy {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or subsystem layouts that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter outside the domain of the operation (p > 1, d = 5 for SU(d), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Dense dimension above the configured cap (QPROXY_DENSE_CAP).
class CapError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

/// Configuration rejected by validation; carries every violation found.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "invalid configuration";
    for (const auto& item : items) {
      out += "\n  - ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace qproxy
