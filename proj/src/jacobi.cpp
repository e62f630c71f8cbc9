#include "svrrg/jacobi.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace svrrg {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  double s = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) s += 2.0 * A(p, q) * A(p, q);
  return std::sqrt(s);
}

}  // namespace

JacobiEigen jacobi_eigh(Eigen::MatrixXd A, int max_sweeps, double tol_factor) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw std::invalid_argument("jacobi_eigh: matrix must be square");
  if (((A - A.transpose()).norm()) > 1e-12 * std::max(1.0, A.norm()))
    throw std::invalid_argument("jacobi_eigh: matrix must be symmetric");
  A = 0.5 * (A + A.transpose()).eval();

  const double norm_f = A.norm();
  const double tol = tol_factor * norm_f;
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);

  JacobiEigen out;
  double off = off_diagonal_norm(A);
  int sweep = 0;
  while (off > tol && sweep < max_sweeps) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double app = A(p, p), aqq = A(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = A(i, p), aiq = A(i, q);
          A(i, p) = c * aip - s * aiq;
          A(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = A(p, i), aqi = A(q, i);
          A(p, i) = c * api - s * aqi;
          A(q, i) = s * api + c * aqi;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          const double vip = V(i, p), viq = V(i, q);
          V(i, p) = c * vip - s * viq;
          V(i, q) = s * vip + c * viq;
        }
      }
    }
    ++sweep;
    const double next_off = off_diagonal_norm(A);
    // Stalled at the rounding floor counts as converged.
    if (next_off >= off && next_off <= 1e-11 * std::max(1.0, norm_f)) {
      off = next_off;
      break;
    }
    off = next_off;
  }
  if (off > tol && off > 1e-11 * std::max(1.0, norm_f))
    throw std::runtime_error("jacobi_eigh: no convergence in " + std::to_string(max_sweeps) +
                             " sweeps (off-diagonal residual " + std::to_string(off) + ")");

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&A](int a, int b) { return A(a, a) > A(b, b); });

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    out.values(j) = A(order[j], order[j]);
    out.vectors.col(j) = V.col(order[j]);
    int arg = 0;
    out.vectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.vectors(arg, j) < 0.0) out.vectors.col(j) = -out.vectors.col(j);
  }
  out.sweeps_used = sweep;
  out.off_residual = off;
  return out;
}

}  // namespace svrrg
