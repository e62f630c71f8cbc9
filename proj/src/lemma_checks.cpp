#include "svrrg/lemma_checks.hpp"

#include <cmath>

#include "svrrg/jacobi.hpp"

namespace svrrg {

double lemma6_bound(int k, double alpha) {
  if (!(alpha < 0.2)) throw std::invalid_argument("lemma6_bound: requires alpha < 1/5");
  if (alpha < 0.0) throw std::invalid_argument("lemma6_bound: alpha must be nonnegative");
  return 20.0 * k * alpha / (1.0 - 5.0 * alpha);
}

double lemma6_check(const std::vector<Eigen::MatrixXd>& iterates, const Eigen::MatrixXd& V,
                    int k, double alpha) {
  const double bound = lemma6_bound(k, alpha);
  double worst = 0.0;
  for (std::size_t t = 0; t + 1 < iterates.size(); ++t) {
    const double a = (V.transpose() * iterates[t]).squaredNorm();
    const double b = (V.transpose() * iterates[t + 1]).squaredNorm();
    const double delta = std::abs(b - a);
    if (bound == 0.0) {
      if (delta > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, delta / bound);
  }
  return worst;
}

Lemma10Result lemma10_check(const Eigen::MatrixXd& A_dense, const EigenReference& ref,
                            const StiefelPoint& X) {
  const Eigen::MatrixXd& V = ref.V;
  const Eigen::MatrixXd M = V.transpose() * X.mat();  // k x k
  const Eigen::MatrixXd AX = A_dense * X.mat();
  const Eigen::MatrixXd PG = AX - X.mat() * (X.mat().transpose() * AX);
  Lemma10Result r;
  r.lhs = (M.transpose() * (V.transpose() * PG)).trace();
  r.rhs = ref.tau * (M.squaredNorm() - (M.transpose() * M).squaredNorm());
  return r;
}

Eigen::MatrixXd svrrg_noise_term(const BlockPartition& P, const StiefelPoint& X,
                                 const StiefelPoint& Xtilde, const Eigen::MatrixXd& B, int l,
                                 const Eigen::MatrixXd& AX, const Eigen::MatrixXd& AXtilde) {
  const Eigen::MatrixXd& Xm = X.mat();
  const Eigen::MatrixXd& Tm = Xtilde.mat();
  const Eigen::MatrixXd DX = P.block_matvec(l, Xm) - AX;            // (A_l - A) X
  const Eigen::MatrixXd DtB = (P.block_matvec(l, Tm) - AXtilde) * B;  // (A_l - A) Xt B

  auto project_out = [](const Eigen::MatrixXd& base, const Eigen::MatrixXd& M) {
    return (M - base * (base.transpose() * M)).eval();
  };
  const Eigen::MatrixXd term1 = project_out(Xm, DX - DtB);
  const Eigen::MatrixXd term2 = project_out(Xm, Tm * (Tm.transpose() * DtB));
  const Eigen::MatrixXd Pt = DtB - Tm * (Tm.transpose() * DtB);  // (I - Xt Xt^T)(A_l - A) Xt B
  const Eigen::MatrixXd term3 = Xm * skew(Xm.transpose() * Pt);
  return term1 + term2 - term3;
}

Lemma12Result lemma12_check(const BlockPartition& P, const StiefelPoint& X,
                            const StiefelPoint& Xtilde, const Eigen::MatrixXd& B,
                            const EigenReference& ref, double slack) {
  const int L = P.num_blocks();
  const Eigen::MatrixXd AX = P.full_matvec(X.mat());
  const Eigen::MatrixXd AXt = P.full_matvec(Xtilde.mat());

  Lemma12Result r;
  r.kappa_f_sq = 96.0 * (potential(ref, X) + potential(ref, Xtilde));
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(X.rows(), X.cols());
  for (int l = 0; l < L; ++l) {
    const Eigen::MatrixXd W = svrrg_noise_term(P, X, Xtilde, B, l, AX, AXt);
    sum += W;
    const auto gram = jacobi_eigh(Eigen::MatrixXd(W.transpose() * W), 60, 1e-14);
    r.max_spectral = std::max(r.max_spectral, std::sqrt(std::max(0.0, gram.values(0))));
    r.max_frob_sq = std::max(r.max_frob_sq, W.squaredNorm());
  }
  r.mean_residual = (sum / static_cast<double>(L)).norm();
  r.spectral_ok = r.max_spectral <= r.kappa2 + slack;
  r.frob_ok = r.max_frob_sq <= r.kappa_f_sq + slack;
  r.zero_mean_ok = r.mean_residual <= slack;
  return r;
}

}  // namespace svrrg
