#pragma once

#include <vector>

#include "skos/coeff.hpp"

namespace skos {

struct MatrixEntry {
  long row = 0;
  long col = 0;
  Integer value;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

// Sparse integer matrix in coordinate form. Entries are sorted by (row, col),
// unique, and never zero.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(long rows, long cols);

  // Sums duplicates and drops zeros.
  static ExactMatrix from_triplets(long rows, long cols, std::vector<MatrixEntry> entries);
  static ExactMatrix from_dense(const std::vector<std::vector<Integer>>& rows, long cols = -1);
  static ExactMatrix identity(long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const std::vector<MatrixEntry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Integer at(long r, long c) const;

  ExactMatrix operator*(const ExactMatrix& other) const;
  ExactMatrix operator+(const ExactMatrix& other) const;
  ExactMatrix scaled(const Integer& k) const;
  ExactMatrix transposed() const;
  ExactMatrix submatrix(const std::vector<long>& row_ids, const std::vector<long>& col_ids) const;

  std::vector<std::vector<Integer>> to_dense() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  long rows_ = 0;
  long cols_ = 0;
  std::vector<MatrixEntry> entries_;
};

}  // namespace skos
