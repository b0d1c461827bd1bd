#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mpec {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Argument outside the mathematical domain of a function (e.g. θ_r at x < 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Derivative is unbounded at the requested point (Weibull shape k < 1 at x = 0).
class SingularDerivative : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A callback produced a non-finite value. `row` is the offending constraint
/// row, or -1 for the objective.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, int row) : std::runtime_error(what), row_(row) {}
  int row() const { return row_; }

 private:
  int row_;
};

}  // namespace mpec
