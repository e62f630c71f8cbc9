#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "svrrg/stiefel.hpp"

namespace svrrg {

/// One row of a convergence trace. All metrics are nonnegative; relative
/// error is clamped at zero where roundoff would take it a few ulps negative.
struct MetricSample {
  int epoch = 0;
  double passes = 0.0;
  double feasibility = 0.0;
  double rel_error = 0.0;
  double potential_norm = 0.0;  // Theta(X)/k; NaN without a reference
  double wall_ms = 0.0;
};

/// ||X^T X - I||_F on the raw matrix.
inline double feasibility(const Eigen::MatrixXd& X) {
  const auto k = X.cols();
  return (X.transpose() * X - Eigen::MatrixXd::Identity(k, k)).norm();
}

/// E(X) = 1 - (1/2) tr(X^T A X) / opt_value.
inline double relative_error(const MatvecFn& A, const StiefelPoint& X, double opt_value) {
  if (!(opt_value > 0.0)) throw std::invalid_argument("relative_error: opt_value must be > 0");
  const double half_trace = 0.5 * (X.mat().transpose() * A(X.mat())).trace();
  return 1.0 - half_trace / opt_value;
}

inline double relative_error_from_half_trace(double half_trace, double opt_value) {
  if (!(opt_value > 0.0)) throw std::invalid_argument("relative_error: opt_value must be > 0");
  return 1.0 - half_trace / opt_value;
}

}  // namespace svrrg
