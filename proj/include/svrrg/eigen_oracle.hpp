#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "svrrg/jacobi.hpp"
#include "svrrg/sparse_matrix.hpp"
#include "svrrg/stiefel.hpp"

namespace svrrg {

/// Ground truth for the top-k eigenproblem: descending eigenvalues (all n of
/// them when known, at least k+1 otherwise), the top eigenvector block, the
/// eigen-gap tau = lambda_k - lambda_{k+1} and the optimal objective value
/// (1/2) sum_{i<=k} lambda_i.
struct EigenReference {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd V;  // n x k
  int k = 0;
  double tau = 0.0;
  double trace_top_k = 0.0;
};

/// Full dense eigendecomposition via cyclic Jacobi (see jacobi_eigh). Guarded
/// to n <= 5000; intended for oracle duty, not performance.
JacobiEigen dense_eigh(const Eigen::MatrixXd& A, int max_sweeps = 60);

/// Slices a full decomposition down to the top-k reference. Requires
/// tau = lambda_k - lambda_{k+1} > 0.
EigenReference top_k_reference(const JacobiEigen& eig, int k);

/// Synthetic instance A = Q D Q^T with a random orthogonal Q and a prescribed
/// spectrum: lambda_i = 1 - 0.02 (i-1) for i <= k, lambda_{k+1} = lambda_k -
/// gap, then geometric decay toward zero (ratio 0.9). max |lambda| = 1, so
/// ||A||_2 <= 1 and the returned reference has tau = gap exactly. The
/// reference comes from the construction, not from re-decomposition.
std::pair<SymmetricSparseMatrix, EigenReference> make_test_matrix(int n, int k, double gap,
                                                                  std::uint64_t seed);

/// Potential k - ||V^T X||_F^2: rotation-invariant distance to the target
/// subspace, in [0, k], zero exactly when range(X) = range(V).
double potential(const EigenReference& ref, const StiefelPoint& X);
double potential(const EigenReference& ref, const Eigen::MatrixXd& X);

/// Reference cache: textual dump of (n, k, eigenvalues, V) keyed by the
/// content hash of the source matrix. See README for the exact layout.
void save_reference(const std::string& path, const EigenReference& ref,
                    std::uint64_t matrix_hash);
EigenReference load_reference(const std::string& path, std::uint64_t expected_hash);

/// Ground truth for an arbitrary matrix: dense Jacobi when the dimension
/// permits densification, otherwise a long fixed-step deterministic gradient
/// ascent on k+1 columns whose top-k Ritz residuals are driven to a 1e-14
/// scale. V and the top-k eigenvalues are converged quantities; the
/// (k+1)-th eigenvalue (and so tau) is best-effort, since it separates at
/// the tail's own gap.
EigenReference compute_reference(const SymmetricSparseMatrix& A, int k, int dense_limit = 600);

}  // namespace svrrg
