#include "svrrg/sparse_matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace svrrg {

SymmetricSparseMatrix::SymmetricSparseMatrix(int n, std::vector<TriangleEntry> lower_entries) {
  if (n < 0) throw std::invalid_argument("matrix dimension must be nonnegative");
  n_ = n;
  nnz_lower_ = static_cast<long>(lower_entries.size());

  for (const auto& [i, j, v] : lower_entries) {
    (void)v;
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw std::invalid_argument("entry index out of range");
    if (i < j) throw std::invalid_argument("entry above the diagonal in lower-triangle storage");
  }
  {
    auto keys = lower_entries;
    std::sort(keys.begin(), keys.end(), [](const TriangleEntry& a, const TriangleEntry& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    for (std::size_t p = 1; p < keys.size(); ++p) {
      if (std::get<0>(keys[p]) == std::get<0>(keys[p - 1]) &&
          std::get<1>(keys[p]) == std::get<1>(keys[p - 1]))
        throw std::invalid_argument("duplicate entry (" + std::to_string(std::get<0>(keys[p])) +
                                    "," + std::to_string(std::get<1>(keys[p])) + ")");
    }
  }

  // Mirror off-diagonal entries, then counting-sort rows into CSR.
  std::vector<long> count(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [i, j, v] : lower_entries) {
    (void)v;
    ++count[static_cast<std::size_t>(i) + 1];
    if (i != j) ++count[static_cast<std::size_t>(j) + 1];
  }
  row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) row_ptr_[i + 1] = row_ptr_[i] + count[i + 1];
  const long total = row_ptr_[n];
  col_idx_.assign(total, 0);
  values_.assign(total, 0.0);
  std::vector<long> cursor(row_ptr_.begin(), row_ptr_.end() - 1);
  for (const auto& [i, j, v] : lower_entries) {
    col_idx_[cursor[i]] = j;
    values_[cursor[i]] = v;
    ++cursor[i];
    if (i != j) {
      col_idx_[cursor[j]] = i;
      values_[cursor[j]] = v;
      ++cursor[j];
    }
  }
  // Sort each row by column for a reproducible layout.
  for (int i = 0; i < n; ++i) {
    const long b = row_ptr_[i], e = row_ptr_[i + 1];
    std::vector<std::pair<int, double>> row(e - b);
    for (long p = b; p < e; ++p) row[p - b] = {col_idx_[p], values_[p]};
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& c) { return a.first < c.first; });
    for (long p = b; p < e; ++p) {
      col_idx_[p] = row[p - b].first;
      values_[p] = row[p - b].second;
    }
  }
}

Eigen::MatrixXd SymmetricSparseMatrix::matvec(const Eigen::MatrixXd& X) const {
  if (X.rows() != n_) throw std::invalid_argument("matvec: dimension mismatch");
  const int k = static_cast<int>(X.cols());
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n_, k);
  for (int i = 0; i < n_; ++i) {
    for (long p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      const double v = values_[p];
      const int j = col_idx_[p];
      for (int c = 0; c < k; ++c) Y(i, c) += v * X(j, c);
    }
  }
  return Y;
}

double SymmetricSparseMatrix::one_norm() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (long p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += std::abs(values_[p]);
    best = std::max(best, s);
  }
  return best;
}

Eigen::MatrixXd SymmetricSparseMatrix::to_dense() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (long p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) D(i, col_idx_[p]) = values_[p];
  return D;
}

double matrix_one_norm(const SymmetricSparseMatrix& A) { return A.one_norm(); }

std::uint64_t content_hash(const SymmetricSparseMatrix& A) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint64_t n = static_cast<std::uint64_t>(A.rows());
  mix(&n, sizeof n);
  mix(A.row_ptr().data(), A.row_ptr().size() * sizeof(long));
  mix(A.col_idx().data(), A.col_idx().size() * sizeof(int));
  mix(A.values().data(), A.values().size() * sizeof(double));
  return h;
}

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool parse_int(const std::string& tok, long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (errno != 0 || end != tok.c_str() + tok.size()) return false;
  out = v;
  return true;
}

bool parse_real(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(tok.c_str(), &end);
  if (errno != 0 || end != tok.c_str() + tok.size()) return false;
  out = v;
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

SymmetricSparseMatrix load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);

  std::string line;
  long lineno = 0;

  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++lineno;
  {
    auto tok = split_ws(line);
    if (tok.size() < 5 || lower(tok[0]) != "%%matrixmarket")
      throw ParseError("expected '%%MatrixMarket matrix coordinate real symmetric' banner", lineno);
    if (lower(tok[1]) != "matrix") throw ParseError("unsupported object '" + tok[1] + "'", lineno);
    if (lower(tok[2]) != "coordinate")
      throw ParseError("unsupported format '" + tok[2] + "' (need coordinate)", lineno);
    if (lower(tok[3]) != "real")
      throw ParseError("unsupported field '" + tok[3] + "' (need real)", lineno);
    if (lower(tok[4]) != "symmetric")
      throw ParseError("unsupported symmetry '" + tok[4] + "' (need symmetric)", lineno);
  }

  // Comment block, then the size line.
  long rows = -1, cols = -1, nnz = -1;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing size line", lineno + 1);
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 3 || !parse_int(tok[0], rows) || !parse_int(tok[1], cols) ||
        !parse_int(tok[2], nnz))
      throw ParseError("malformed size line (need 'rows cols nnz')", lineno);
    break;
  }
  if (rows < 0 || cols < 0 || nnz < 0) throw ParseError("negative size", lineno);
  if (rows != cols) throw ParseError("symmetric matrix must be square", lineno);
  if (rows > INT32_MAX) throw ParseError("dimension too large", lineno);

  std::vector<TriangleEntry> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  std::vector<long> entry_line(static_cast<std::size_t>(nnz));
  long seen = 0;
  while (seen < nnz) {
    if (!std::getline(in, line))
      throw ParseError("unexpected end of file: expected " + std::to_string(nnz) +
                           " entries, got " + std::to_string(seen),
                       lineno + 1);
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '%') continue;
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    long i = 0, j = 0;
    double v = 0.0;
    if (tok.size() != 3 || !parse_int(tok[0], i) || !parse_int(tok[1], j) || !parse_real(tok[2], v))
      throw ParseError("malformed entry (need 'i j value')", lineno);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError("index out of range: (" + std::to_string(i) + "," + std::to_string(j) + ")",
                       lineno);
    if (i < j)
      throw ParseError("entry above the diagonal in symmetric storage: (" + std::to_string(i) +
                           "," + std::to_string(j) + ")",
                       lineno);
    entry_line[static_cast<std::size_t>(seen)] = lineno;
    entries.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
    ++seen;
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] != '%' && !split_ws(line).empty())
      throw ParseError("trailing data after " + std::to_string(nnz) + " declared entries", lineno);
  }

  // Duplicate detection with line attribution.
  {
    std::vector<std::size_t> order(entries.size());
    for (std::size_t p = 0; p < order.size(); ++p) order[p] = p;
    std::sort(order.begin(), order.end(), [&entries](std::size_t a, std::size_t b) {
      return std::tie(std::get<0>(entries[a]), std::get<1>(entries[a])) <
             std::tie(std::get<0>(entries[b]), std::get<1>(entries[b]));
    });
    for (std::size_t p = 1; p < order.size(); ++p) {
      const auto& a = entries[order[p - 1]];
      const auto& b = entries[order[p]];
      if (std::get<0>(a) == std::get<0>(b) && std::get<1>(a) == std::get<1>(b))
        throw ParseError("duplicate entry (" + std::to_string(std::get<0>(b) + 1) + "," +
                             std::to_string(std::get<1>(b) + 1) + ")",
                         entry_line[order[p]]);
    }
  }

  return SymmetricSparseMatrix(static_cast<int>(rows), std::move(entries));
}

void write_matrix_market(const std::string& path, const SymmetricSparseMatrix& A) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << A.rows() << " " << A.rows() << " " << A.nnz_lower() << "\n";
  char buf[64];
  for (int i = 0; i < A.rows(); ++i) {
    for (long p = A.row_ptr()[i]; p < A.row_ptr()[i + 1]; ++p) {
      const int j = A.col_idx()[p];
      if (j > i) continue;  // stored pattern is mirrored; emit the lower triangle once
      std::snprintf(buf, sizeof buf, "%.17g", A.values()[p]);
      out << (i + 1) << " " << (j + 1) << " " << buf << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace svrrg
