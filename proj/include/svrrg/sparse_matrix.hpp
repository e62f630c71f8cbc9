#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace svrrg {

/// Error raised by the Matrix Market reader, carrying the offending 1-based
/// line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, long line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_ = 0;
};

/// Entry of one stored triangle: (row, col, value), 0-based, row >= col.
using TriangleEntry = std::tuple<int, int, double>;

/// Symmetric sparse matrix. Ingestion takes the lower triangle; assembly
/// mirrors off-diagonal entries and compresses the full pattern to CSR.
/// Immutable after construction.
///
/// Because the matrix is symmetric, row i of the CSR structure is also
/// column i, which is what the column-block partition machinery relies on.
class SymmetricSparseMatrix {
 public:
  SymmetricSparseMatrix() = default;

  /// Throws std::invalid_argument on out-of-range indices, upper-triangle
  /// entries or duplicate (i,j) pairs.
  SymmetricSparseMatrix(int n, std::vector<TriangleEntry> lower_entries);

  int rows() const { return n_; }
  long nnz_stored() const { return static_cast<long>(values_.size()); }
  long nnz_lower() const { return nnz_lower_; }

  /// Y = A * X with a fixed accumulation order (deterministic).
  Eigen::MatrixXd matvec(const Eigen::MatrixXd& X) const;

  /// max over columns of the absolute entry sum (equals the max row sum).
  double one_norm() const;

  Eigen::MatrixXd to_dense() const;

  const std::vector<long>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

 private:
  int n_ = 0;
  long nnz_lower_ = 0;
  std::vector<long> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// Reads a Matrix Market file. Accepted header:
///   %%MatrixMarket matrix coordinate real symmetric
/// with 1-based indices and lower-triangle storage. Malformed headers,
/// unsupported qualifiers, out-of-range indices, above-diagonal entries and
/// duplicates raise ParseError with the line number.
SymmetricSparseMatrix load_matrix_market(const std::string& path);

/// Writes the lower triangle in the same dialect load_matrix_market reads.
void write_matrix_market(const std::string& path, const SymmetricSparseMatrix& A);

double matrix_one_norm(const SymmetricSparseMatrix& A);

/// FNV-1a over the assembled CSR arrays; used to pair reference-cache files
/// with the matrix they were computed from.
std::uint64_t content_hash(const SymmetricSparseMatrix& A);

}  // namespace svrrg
