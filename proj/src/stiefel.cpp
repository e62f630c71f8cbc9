#include "svrrg/stiefel.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "svrrg/jacobi.hpp"

namespace svrrg {

StiefelPoint::StiefelPoint(Eigen::MatrixXd X, double tol) : X_(std::move(X)) {
  if (X_.rows() < X_.cols() || X_.cols() < 1)
    throw std::invalid_argument("StiefelPoint: need n >= k >= 1");
  const int k = static_cast<int>(X_.cols());
  const double infeasibility =
      (X_.transpose() * X_ - Eigen::MatrixXd::Identity(k, k)).norm();
  if (!(infeasibility <= tol))
    throw std::invalid_argument("StiefelPoint: off manifold, ||X^T X - I||_F = " +
                                std::to_string(infeasibility));
}

Eigen::MatrixXd skew(const Eigen::MatrixXd& H) { return 0.5 * (H - H.transpose().eval()); }

TangentVector project_tangent(const StiefelPoint& X, const Eigen::MatrixXd& Z) {
  if (Z.rows() != X.rows() || Z.cols() != X.cols())
    throw std::invalid_argument("project_tangent: dimension mismatch");
  const Eigen::MatrixXd XtZ = X.mat().transpose() * Z;
  return TangentVector{Z - X.mat() * XtZ + X.mat() * skew(XtZ)};
}

Eigen::MatrixXd inv_sqrt_spd(const Eigen::MatrixXd& S) {
  if (S.rows() != S.cols()) throw std::invalid_argument("inv_sqrt_spd: matrix must be square");
  const auto eig = jacobi_eigh(S, 60, 1e-15);
  const int k = static_cast<int>(S.rows());
  Eigen::VectorXd d(k);
  for (int i = 0; i < k; ++i) {
    if (!(eig.values(i) > 0.0))
      throw std::domain_error("inv_sqrt_spd: matrix is not positive definite (eigenvalue " +
                              std::to_string(eig.values(i)) + ")");
    d(i) = 1.0 / std::sqrt(eig.values(i));
  }
  Eigen::MatrixXd R = eig.vectors * d.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (R + R.transpose().eval());
}

StiefelPoint retract(const StiefelPoint& X, const TangentVector& xi) {
  if (xi.Z.rows() != X.rows() || xi.Z.cols() != X.cols())
    throw std::invalid_argument("retract: dimension mismatch");
  if (xi.Z.isZero(0.0)) return X;
  const Eigen::MatrixXd Y = X.mat() + xi.Z;
  Eigen::MatrixXd S = Y.transpose() * Y;
  S = 0.5 * (S + S.transpose().eval());
  return StiefelPoint(Y * inv_sqrt_spd(S));
}

TangentVector vector_transport(const StiefelPoint& from, const StiefelPoint& to,
                               const TangentVector& xi) {
  if (xi.Z.rows() != from.rows() || xi.Z.cols() != from.cols())
    throw std::invalid_argument("vector_transport: dimension mismatch");
  return project_tangent(to, xi.Z);
}

TangentVector riemannian_gradient(const MatvecFn& A, const StiefelPoint& X) {
  return riemannian_gradient_from_product(X, A(X.mat()));
}

TangentVector riemannian_gradient_from_product(const StiefelPoint& X, const Eigen::MatrixXd& AX) {
  if (AX.rows() != X.rows() || AX.cols() != X.cols())
    throw std::invalid_argument("riemannian_gradient: dimension mismatch");
  return TangentVector{AX - X.mat() * (X.mat().transpose() * AX)};
}

Eigen::MatrixXd procrustes_align(const StiefelPoint& X, const StiefelPoint& Xtilde,
                                 double* min_singular) {
  if (X.rows() != Xtilde.rows() || X.cols() != Xtilde.cols())
    throw std::invalid_argument("procrustes_align: dimension mismatch");
  const Eigen::MatrixXd C = X.mat().transpose() * Xtilde.mat();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (min_singular) *min_singular = svd.singularValues().minCoeff();
  return svd.matrixV() * svd.matrixU().transpose();
}

StiefelPoint random_stiefel(int n, int k, Rng& rng) {
  if (n < k || k < 1) throw std::invalid_argument("random_stiefel: need n >= k >= 1");
  Eigen::MatrixXd X(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = rng.normal();
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < k; ++j) {
      for (int p = 0; p < j; ++p) X.col(j) -= X.col(p).dot(X.col(j)) * X.col(p);
      const double norm = X.col(j).norm();
      if (norm < 1e-300) throw std::runtime_error("random_stiefel: degenerate draw");
      X.col(j) /= norm;
    }
  }
  return StiefelPoint(std::move(X));
}

}  // namespace svrrg
