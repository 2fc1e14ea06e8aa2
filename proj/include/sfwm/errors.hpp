#pragma once

#include <stdexcept>
#include <string>

namespace sfwm {

/// Failure classes; each maps onto a process exit code in the CLI.
enum class ErrorKind { numeric, config, domain };

inline constexpr int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::numeric: return 1;
    case ErrorKind::config: return 2;
    case ErrorKind::domain: return 3;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A frequency or wavelength fell outside a model's validity window.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

/// Malformed or inconsistent input configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

/// The fundamental-mode eigenvalue equation has no usable root.
class ModeSolveError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A design quantity (zero-dispersion frequency, bracket, ...) does not exist.
class DesignError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A quadrature or sampling grid cannot resolve the requested feature.
class ResolutionError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A caller broke an operation's precondition.
class ContractError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace sfwm
