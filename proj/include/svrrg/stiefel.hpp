#pragma once

#include <Eigen/Dense>
#include <functional>

#include "svrrg/rng.hpp"

namespace svrrg {

/// Applies the data operator to an n x k block: X -> A X.
using MatvecFn = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

/// Point on St(n,k) = { X : X^T X = I }. Feasibility is validated on
/// construction; retraction output re-enters through this constructor, so
/// every iterate in the system satisfies ||X^T X - I||_F <= 1e-12.
class StiefelPoint {
 public:
  explicit StiefelPoint(Eigen::MatrixXd X, double tol = 1e-12);

  const Eigen::MatrixXd& mat() const { return X_; }
  int rows() const { return static_cast<int>(X_.rows()); }
  int cols() const { return static_cast<int>(X_.cols()); }

 private:
  Eigen::MatrixXd X_;
};

/// Tangent direction at a Stiefel point: X^T Z is skew-symmetric. The base
/// point is positional (the X argument of whichever operation consumes it).
struct TangentVector {
  Eigen::MatrixXd Z;
};

/// skew(H) = (H - H^T)/2, symmetrized explicitly to suppress roundoff drift.
Eigen::MatrixXd skew(const Eigen::MatrixXd& H);

/// Orthogonal projection onto the tangent space at X:
///   P_X(Z) = (I - X X^T) Z + X skew(X^T Z).
/// Idempotent; the output satisfies the tangency invariant.
TangentVector project_tangent(const StiefelPoint& X, const Eigen::MatrixXd& Z);

/// S^{-1/2} for symmetric positive definite S, via the k x k Jacobi
/// eigendecomposition. Throws std::domain_error when an eigenvalue is <= 0.
Eigen::MatrixXd inv_sqrt_spd(const Eigen::MatrixXd& S);

/// Retraction R_X(xi) = (X + xi)(Y^T Y)^{-1/2} with Y = X + xi. The Gram
/// matrix is formed in full rather than as I + xi^T xi, which keeps the
/// result on the manifold even when X^T xi is only skew rather than zero.
/// An exactly-zero xi returns X unchanged.
StiefelPoint retract(const StiefelPoint& X, const TangentVector& xi);

/// Vector transport by projection: T_{from->to}(xi) = P_to(xi).
TangentVector vector_transport(const StiefelPoint& from, const StiefelPoint& to,
                               const TangentVector& xi);

/// Riemannian gradient of f(X) = (1/2) tr(X^T A X) under the Euclidean
/// metric: Grad f(X) = (I - X X^T) A X.
TangentVector riemannian_gradient(const MatvecFn& A, const StiefelPoint& X);

/// Same, given the precomputed product A X.
TangentVector riemannian_gradient_from_product(const StiefelPoint& X, const Eigen::MatrixXd& AX);

/// Orthogonal k x k matrix B = Q2 Q1^T from the SVD X^T Xt = Q1 W Q2^T; B
/// minimizes ||X - Xt B||_F over orthogonal B. When X^T Xt is rank deficient
/// the SVD still yields a valid minimizer; *min_singular reports the smallest
/// singular value so callers can flag the degeneracy.
Eigen::MatrixXd procrustes_align(const StiefelPoint& X, const StiefelPoint& Xtilde,
                                 double* min_singular = nullptr);

/// Standard-normal n x k entries orthonormalized by Gram-Schmidt with one
/// reorthogonalization pass.
StiefelPoint random_stiefel(int n, int k, Rng& rng);

}  // namespace svrrg
