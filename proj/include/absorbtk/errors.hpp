#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace absorbtk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (empty matrix, non-Hermitian
/// input, function undefined on the spectrum, bad grid).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Density matrix with trace != 1 or not positive.
class InvalidStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotPositiveError : public Error {
 public:
  NotPositiveError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Quadrature refinement that never settled; carries the last two values.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : Error(what), previous_(previous), last_(last) {}
  double previous() const { return previous_; }
  double last() const { return last_; }

 private:
  double previous_;
  double last_;
};

/// An element (or a block (i, j) of a block operator) is not in the
/// dense subalgebra, measured by its projection residual.
class NotInAlgebraError : public Error {
 public:
  NotInAlgebraError(const std::string& what, double residual,
                    std::optional<std::pair<int, int>> block = std::nullopt)
      : Error(what), residual_(residual), block_(block) {}
  double residual() const { return residual_; }
  const std::optional<std::pair<int, int>>& block() const { return block_; }

 private:
  double residual_;
  std::optional<std::pair<int, int>> block_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& what, int line, int column)
      : ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                    what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A loaded object violates a named type invariant.
class InvariantError : public ConfigError {
 public:
  InvariantError(const std::string& invariant, const std::string& detail)
      : ConfigError(invariant + (detail.empty() ? "" : ": " + detail)), invariant_(invariant) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace absorbtk
