#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kdv {

/// Base of every error raised by the solver library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or violated precondition (lengths, ranges, parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A is singular: the two-term averaging circulant has det 0 for even n.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Right-hand side of B*phi = rhs is not in the range of B.
class IncompatibleRhsError : public Error {
 public:
  IncompatibleRhsError(const std::string& what, double sum)
      : Error(what), sum_(sum) {}
  double sum() const noexcept { return sum_; }

 private:
  double sum_;
};

/// Circulant stencil operator with a vanishing symbol.
class SingularLinearSystemError : public Error {
 public:
  using Error::Error;
};

/// Fixed-point iteration exceeded its iteration budget or threshold.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Coefficient matrix of the monolithic Preissman iteration is rank deficient.
class DegenerateSystemError : public Error {
 public:
  DegenerateSystemError(const std::string& what, int rank, int columns)
      : Error(what), rank_(rank), columns_(columns) {}
  int rank() const noexcept { return rank_; }
  int columns() const noexcept { return columns_; }

 private:
  int rank_;
  int columns_;
};

/// Explicit update produced NaN/Inf or crossed the blowup threshold.
class BlowupError : public Error {
 public:
  BlowupError(const std::string& what, long step, double max_abs)
      : Error(what), step_(step), max_abs_(max_abs) {}
  long step() const noexcept { return step_; }
  double max_abs() const noexcept { return max_abs_; }

 private:
  long step_;
  double max_abs_;
};

/// Malformed input file or configuration text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line) : Error(what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// Invalid run configuration: unknown key, bad value, or an incompatible
/// scheme/grid combination.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string key = {})
      : Error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace kdv
