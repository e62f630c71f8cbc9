#pragma once

#include <vector>

#include "svrrg/block_partition.hpp"
#include "svrrg/eigen_oracle.hpp"
#include "svrrg/stiefel.hpp"

namespace svrrg {

/// 20 k alpha / (1 - 5 alpha); requires alpha < 1/5 and components rescaled
/// so max_l ||A^(l)||_2 <= 1.
double lemma6_bound(int k, double alpha);

/// Worst |delta ||V^T X||_F^2| over consecutive iterates, divided by
/// lemma6_bound. Values <= 1 mean the per-step potential-change bound holds.
double lemma6_check(const std::vector<Eigen::MatrixXd>& iterates, const Eigen::MatrixXd& V,
                    int k, double alpha);

struct Lemma10Result {
  double lhs = 0.0;  // tr(X^T V V^T (I - X X^T) A X)
  double rhs = 0.0;  // tau (||V^T X||_F^2 - ||X^T V V^T X||_F^2)
};

/// Trace inequality linking the gradient's alignment with the target
/// subspace to the eigen-gap. Holds for every X when tau > 0.
Lemma10Result lemma10_check(const Eigen::MatrixXd& A_dense, const EigenReference& ref,
                            const StiefelPoint& X);

struct Lemma12Result {
  double max_spectral = 0.0;   // max_l ||W_l||_2
  double max_frob_sq = 0.0;    // max_l ||W_l||_F^2
  double kappa2 = 8.0;         // spectral bound
  double kappa_f_sq = 0.0;     // 96 (Theta(X) + Theta(Xtilde))
  double mean_residual = 0.0;  // ||(1/L) sum_l W_l||_F
  bool spectral_ok = false;
  bool frob_ok = false;
  bool zero_mean_ok = false;
};

/// Evaluates the stochastic zero-mean term W_l for every block l:
///   W = (I-XX^T)(A_l - A)(X - Xt B) + (I-XX^T) Xt Xt^T (A_l - A) Xt B
///       - X skew(X^T (I - Xt Xt^T)(A_l - A) Xt B)
/// and checks the zero mean plus both norm bounds. The Frobenius bound
/// assumes B is the Procrustes alignment of (X, Xt); the spectral bound and
/// the zero mean hold for any fixed orthogonal B. Requires rescaled
/// components (max_l ||A^(l)||_2 <= 1).
Lemma12Result lemma12_check(const BlockPartition& P, const StiefelPoint& X,
                            const StiefelPoint& Xtilde, const Eigen::MatrixXd& B,
                            const EigenReference& ref, double slack = 1e-10);

/// The W_l term itself, for callers that need the raw matrices.
Eigen::MatrixXd svrrg_noise_term(const BlockPartition& P, const StiefelPoint& X,
                                 const StiefelPoint& Xtilde, const Eigen::MatrixXd& B, int l,
                                 const Eigen::MatrixXd& AX, const Eigen::MatrixXd& AXtilde);

}  // namespace svrrg
