#pragma once

#include <Eigen/Dense>

namespace svrrg {

struct JacobiEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // columns, same order
  int sweeps_used = 0;
  double off_residual = 0.0;  // final off-diagonal Frobenius norm
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below tol_factor * ||A||_F; throws
/// std::runtime_error with the residual if the sweep limit is hit first.
/// Eigenvector signs are normalized (largest-magnitude component positive).
JacobiEigen jacobi_eigh(Eigen::MatrixXd A, int max_sweeps = 60, double tol_factor = 1e-13);

}  // namespace svrrg
