#pragma once

#include <cstdint>
#include <functional>

#include "svrrg/sparse_matrix.hpp"

namespace svrrg {

/// Column-block decomposition A = (1/L) * sum_l A^(l), where component l is
/// L times the columns [l*bs, min((l+1)*bs, n)) of A and zero elsewhere. The
/// last block may be narrower; L = ceil(n / bs). Components are kept implicit
/// as (column range, scale) over the shared CSR structure.
///
/// A uniform value scale can be applied on top (set_value_scale), which
/// multiplies the full operator and every component alike; it is how the
/// 1/r rescaling that enforces max_l ||A^(l)||_2 <= 1 is realized.
///
/// The referenced matrix must outlive the partition. Immutable apart from the
/// value scale; safe for shared read-only use.
class BlockPartition {
 public:
  BlockPartition(const SymmetricSparseMatrix& A, int block_size);

  int rows() const { return A_->rows(); }
  int num_blocks() const { return L_; }
  int block_size() const { return block_size_; }
  double value_scale() const { return value_scale_; }
  void set_value_scale(double s) { value_scale_ = s; }
  const SymmetricSparseMatrix& matrix() const { return *A_; }

  int block_begin(int l) const;
  int block_end(int l) const;

  /// Y = (value_scale * A) * X.
  Eigen::MatrixXd full_matvec(const Eigen::MatrixXd& X) const;

  /// Y = A^(l) * X = L * value_scale * (column block l of A) * X.
  /// Cost is proportional to the nonzeros of block l times X.cols().
  Eigen::MatrixXd block_matvec(int l, const Eigen::MatrixXd& X) const;

  /// Y = A^(l)^T * X (the row-block gather); used by norm estimation.
  Eigen::MatrixXd block_matvec_transpose(int l, const Eigen::MatrixXd& X) const;

  /// ||value_scale * A||_1.
  double one_norm() const { return value_scale_ * A_->one_norm(); }

 private:
  const SymmetricSparseMatrix* A_;
  int L_ = 0;
  int block_size_ = 0;
  double value_scale_ = 1.0;
};

BlockPartition partition_column_blocks(const SymmetricSparseMatrix& A, int block_size);

/// Upper bound r >= max_l ||A^(l)||_2 from row/column absolute sums of each
/// scaled component. Components are not symmetric, so the bound used is
/// ||M||_2 <= sqrt(||M||_1 ||M||_inf). Dividing the value scale by r makes
/// every component's spectral norm at most 1.
double gershgorin_bound(const BlockPartition& P);

using VectorApply = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Power iteration on M^T M from a seeded random start. The returned value is
/// a Rayleigh-quotient estimate: a lower bound on ||M||_2, nondecreasing in
/// the iteration count.
double spectral_norm_estimate(const VectorApply& apply, const VectorApply& apply_transpose,
                              int dim, int iters, std::uint64_t seed);

/// Convenience overload for a symmetric operator.
double spectral_norm_estimate(const VectorApply& apply_symmetric, int dim, int iters,
                              std::uint64_t seed);

}  // namespace svrrg
