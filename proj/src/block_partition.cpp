#include "svrrg/block_partition.hpp"

#include <cmath>

#include "svrrg/rng.hpp"

namespace svrrg {

BlockPartition::BlockPartition(const SymmetricSparseMatrix& A, int block_size) : A_(&A) {
  const int n = A.rows();
  if (block_size < 1 || block_size > n)
    throw std::invalid_argument("block_size must be in [1, n]");
  block_size_ = block_size;
  L_ = (n + block_size - 1) / block_size;
}

BlockPartition partition_column_blocks(const SymmetricSparseMatrix& A, int block_size) {
  return BlockPartition(A, block_size);
}

int BlockPartition::block_begin(int l) const {
  if (l < 0 || l >= L_) throw std::out_of_range("block index out of range");
  return l * block_size_;
}

int BlockPartition::block_end(int l) const {
  if (l < 0 || l >= L_) throw std::out_of_range("block index out of range");
  return std::min((l + 1) * block_size_, A_->rows());
}

Eigen::MatrixXd BlockPartition::full_matvec(const Eigen::MatrixXd& X) const {
  return value_scale_ * A_->matvec(X);
}

Eigen::MatrixXd BlockPartition::block_matvec(int l, const Eigen::MatrixXd& X) const {
  const int c0 = block_begin(l), c1 = block_end(l);
  const int n = A_->rows();
  if (X.rows() != n) throw std::invalid_argument("block_matvec: dimension mismatch");
  const int k = static_cast<int>(X.cols());
  const double s = value_scale_ * static_cast<double>(L_);
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, k);
  const auto& rp = A_->row_ptr();
  const auto& ci = A_->col_idx();
  const auto& va = A_->values();
  // Column c of A is row c of the mirrored CSR pattern: scatter row c into Y.
  for (int c = c0; c < c1; ++c) {
    for (long p = rp[c]; p < rp[c + 1]; ++p) {
      const double v = s * va[p];
      const int j = ci[p];
      for (int t = 0; t < k; ++t) Y(j, t) += v * X(c, t);
    }
  }
  return Y;
}

Eigen::MatrixXd BlockPartition::block_matvec_transpose(int l, const Eigen::MatrixXd& X) const {
  const int c0 = block_begin(l), c1 = block_end(l);
  const int n = A_->rows();
  if (X.rows() != n) throw std::invalid_argument("block_matvec_transpose: dimension mismatch");
  const int k = static_cast<int>(X.cols());
  const double s = value_scale_ * static_cast<double>(L_);
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, k);
  const auto& rp = A_->row_ptr();
  const auto& ci = A_->col_idx();
  const auto& va = A_->values();
  for (int c = c0; c < c1; ++c) {
    for (long p = rp[c]; p < rp[c + 1]; ++p) {
      const double v = s * va[p];
      const int j = ci[p];
      for (int t = 0; t < k; ++t) Y(c, t) += v * X(j, t);
    }
  }
  return Y;
}

double gershgorin_bound(const BlockPartition& P) {
  const auto& A = P.matrix();
  const int n = A.rows();
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  const auto& va = A.values();
  const double s = P.value_scale() * static_cast<double>(P.num_blocks());

  double r = 0.0;
  std::vector<double> rowsum(static_cast<std::size_t>(n));
  for (int l = 0; l < P.num_blocks(); ++l) {
    const int c0 = P.block_begin(l), c1 = P.block_end(l);
    std::fill(rowsum.begin(), rowsum.end(), 0.0);
    double max_col = 0.0;
    for (int c = c0; c < c1; ++c) {
      double colsum = 0.0;
      for (long p = rp[c]; p < rp[c + 1]; ++p) {
        const double a = std::abs(va[p]) * s;
        colsum += a;
        rowsum[ci[p]] += a;
      }
      max_col = std::max(max_col, colsum);
    }
    double max_row = 0.0;
    for (int i = 0; i < n; ++i) max_row = std::max(max_row, rowsum[i]);
    r = std::max(r, std::sqrt(max_col * max_row));
  }
  return r;
}

double spectral_norm_estimate(const VectorApply& apply, const VectorApply& apply_transpose,
                              int dim, int iters, std::uint64_t seed) {
  if (iters < 1) throw std::invalid_argument("iters must be >= 1");
  Rng rng(seed);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal();
  double nv = v.norm();
  if (nv == 0.0) return 0.0;
  v /= nv;
  double estimate = 0.0;
  for (int it = 0; it < iters; ++it) {
    const Eigen::VectorXd w = apply(v);
    estimate = w.norm();  // sqrt of the Rayleigh quotient of M^T M at unit v
    if (estimate == 0.0) return 0.0;
    v = apply_transpose(w);
    nv = v.norm();
    if (nv == 0.0) return estimate;
    v /= nv;
  }
  return estimate;
}

double spectral_norm_estimate(const VectorApply& apply_symmetric, int dim, int iters,
                              std::uint64_t seed) {
  return spectral_norm_estimate(apply_symmetric, apply_symmetric, dim, iters, seed);
}

}  // namespace svrrg
