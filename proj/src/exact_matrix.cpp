#include "skos/exact_matrix.hpp"

#include <algorithm>
#include <map>

#include "skos/errors.hpp"

namespace skos {

ExactMatrix::ExactMatrix(long rows, long cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InvalidInput("matrix dimensions must be nonnegative");
}

ExactMatrix ExactMatrix::from_triplets(long rows, long cols, std::vector<MatrixEntry> entries) {
  ExactMatrix m(rows, cols);
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw InvalidInput("matrix entry out of range");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (auto& e : entries) {
    if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
      m.entries_.back().value += e.value;
    } else {
      if (!m.entries_.empty() && sgn(m.entries_.back().value) == 0) m.entries_.pop_back();
      m.entries_.push_back(std::move(e));
    }
  }
  if (!m.entries_.empty() && sgn(m.entries_.back().value) == 0) m.entries_.pop_back();
  return m;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Integer>>& rows, long cols) {
  if (cols < 0) cols = rows.empty() ? 0 : static_cast<long>(rows.front().size());
  std::vector<MatrixEntry> entries;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<long>(rows[r].size()) != cols) throw InvalidInput("ragged dense matrix");
    for (long c = 0; c < cols; ++c) {
      if (sgn(rows[r][c]) != 0) entries.push_back({static_cast<long>(r), c, rows[r][c]});
    }
  }
  return from_triplets(static_cast<long>(rows.size()), cols, std::move(entries));
}

ExactMatrix ExactMatrix::identity(long n) {
  ExactMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.entries_.push_back({i, i, Integer(1)});
  return m;
}

Integer ExactMatrix::at(long r, long c) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c},
                             [](const MatrixEntry& e, const std::pair<long, long>& key) {
                               return e.row != key.first ? e.row < key.first : e.col < key.second;
                             });
  if (it != entries_.end() && it->row == r && it->col == c) return it->value;
  return 0;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& other) const {
  if (cols_ != other.rows_) throw InvalidInput("matrix product dimension mismatch");
  // row pointers of the right factor
  std::vector<std::size_t> start(other.rows_ + 1, 0);
  for (const auto& e : other.entries_) ++start[e.row + 1];
  for (long r = 0; r < other.rows_; ++r) start[r + 1] += start[r];
  std::vector<MatrixEntry> out;
  std::size_t i = 0;
  while (i < entries_.size()) {
    long row = entries_[i].row;
    std::map<long, Integer> acc;
    for (; i < entries_.size() && entries_[i].row == row; ++i) {
      const auto& a = entries_[i];
      for (std::size_t k = start[a.col]; k < start[a.col + 1]; ++k) {
        acc[other.entries_[k].col] += a.value * other.entries_[k].value;
      }
    }
    for (auto& [c, v] : acc) {
      if (sgn(v) != 0) out.push_back({row, c, std::move(v)});
    }
  }
  ExactMatrix m(rows_, other.cols_);
  m.entries_ = std::move(out);
  return m;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix sum dimension mismatch");
  std::vector<MatrixEntry> all = entries_;
  all.insert(all.end(), other.entries_.begin(), other.entries_.end());
  return from_triplets(rows_, cols_, std::move(all));
}

ExactMatrix ExactMatrix::scaled(const Integer& k) const {
  ExactMatrix m(rows_, cols_);
  if (sgn(k) == 0) return m;
  m.entries_ = entries_;
  for (auto& e : m.entries_) e.value *= k;
  return m;
}

ExactMatrix ExactMatrix::transposed() const {
  std::vector<MatrixEntry> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
  return from_triplets(cols_, rows_, std::move(t));
}

ExactMatrix ExactMatrix::submatrix(const std::vector<long>& row_ids, const std::vector<long>& col_ids) const {
  std::vector<long> row_map(rows_, -1), col_map(cols_, -1);
  for (std::size_t i = 0; i < row_ids.size(); ++i) row_map.at(row_ids[i]) = static_cast<long>(i);
  for (std::size_t j = 0; j < col_ids.size(); ++j) col_map.at(col_ids[j]) = static_cast<long>(j);
  std::vector<MatrixEntry> out;
  for (const auto& e : entries_) {
    if (row_map[e.row] >= 0 && col_map[e.col] >= 0) out.push_back({row_map[e.row], col_map[e.col], e.value});
  }
  return from_triplets(static_cast<long>(row_ids.size()), static_cast<long>(col_ids.size()), std::move(out));
}

std::vector<std::vector<Integer>> ExactMatrix::to_dense() const {
  std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_, 0));
  for (const auto& e : entries_) d[e.row][e.col] = e.value;
  return d;
}

}  // namespace skos
