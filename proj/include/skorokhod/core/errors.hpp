#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace skorokhod {

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function (t <= 0, eps <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested configuration is outside what the implementation supports.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A random or evaluated quantity came out NaN or infinite.
class NumericalFault : public std::runtime_error {
 public:
  NumericalFault(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// User-supplied derivatives disagree with finite differences of the function.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative projection did not reach tolerance.
class IterationLimitError : public std::runtime_error {
 public:
  IterationLimitError(const std::string& what, Eigen::VectorXd last_iterate, double residual)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  Eigen::VectorXd last_iterate_;
  double residual_;
};

/// Successive refinement levels never came within the requested tolerance.
class RefinementLimitError : public std::runtime_error {
 public:
  RefinementLimitError(const std::string& what, std::vector<double> gaps)
      : std::runtime_error(what), gaps_(std::move(gaps)) {}

  const std::vector<double>& gaps() const noexcept { return gaps_; }

 private:
  std::vector<double> gaps_;
};

}  // namespace skorokhod
