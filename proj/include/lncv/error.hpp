#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lncv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A closed form overflowed 64-bit floating point.
class OverflowError : public Error {
 public:
  OverflowError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Density requested for a zero-variance (point mass) distribution.
class DegenerateDistributionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A sample statistic was requested from an empty accumulator.
class EmptySampleError : public Error {
 public:
  using Error::Error;
};

/// The statistic needs more observations than the accumulator holds.
class SampleTooSmallError : public Error {
 public:
  using Error::Error;
};

/// A simulation would exceed the configured variate budget.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(double cost, double budget, const std::string& what)
      : Error(what), cost_(cost), budget_(budget) {}

  double cost() const noexcept { return cost_; }
  double budget() const noexcept { return budget_; }

 private:
  double cost_;
  double budget_;
};

/// Malformed text input; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lncv
