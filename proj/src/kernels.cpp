#include "skos/kernels.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <omp.h>

#include "skos/errors.hpp"

namespace skos {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce(const Integer& v, std::uint64_t p) {
  Integer r = v % Integer(static_cast<unsigned long>(p));
  if (sgn(r) < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

void check_modulus(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("modulus " + std::to_string(p) + " is not prime");
}

std::vector<std::vector<std::uint64_t>> dense_mod_p(const ExactMatrix& m, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> d(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
  for (const auto& e : m.entries()) d[e.row][e.col] = reduce(e.value, p);
  return d;
}

template <bool Parallel>
long rank_mod_p_dense(const ExactMatrix& m, std::uint64_t p) {
  check_modulus(p);
  auto a = dense_mod_p(m, p);
  const long rows = m.rows();
  const long cols = m.cols();
  long rank = 0;
  for (long c = 0; c < cols && rank < rows; ++c) {
    long pivot = -1;
    for (long r = rank; r < rows; ++r) {
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    std::uint64_t inv = pow_mod(a[rank][c], p - 2, p);
    for (long k = c; k < cols; ++k) a[rank][k] = mul_mod(a[rank][k], inv, p);
    const auto& prow = a[rank];
#pragma omp parallel for schedule(static) if (Parallel)
    for (long r = rank + 1; r < rows; ++r) {
      std::uint64_t f = a[r][c];
      if (f == 0) continue;
      for (long k = c; k < cols; ++k) {
        std::uint64_t sub = mul_mod(f, prow[k], p);
        a[r][k] = a[r][k] >= sub ? a[r][k] - sub : a[r][k] + p - sub;
      }
    }
    ++rank;
  }
  return rank;
}

template <bool Parallel>
long rank_bareiss_dense(const ExactMatrix& m) {
  auto a = m.to_dense();
  const long rows = m.rows();
  const long cols = m.cols();
  Integer prev = 1;
  long rank = 0;
  for (long c = 0; c < cols && rank < rows; ++c) {
    long pivot = -1;
    for (long r = rank; r < rows; ++r) {
      if (sgn(a[r][c]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    const auto& prow = a[rank];
    const Integer& piv = prow[c];
#pragma omp parallel for schedule(dynamic, 4) if (Parallel)
    for (long r = rank + 1; r < rows; ++r) {
      Integer f = a[r][c];
      for (long k = c + 1; k < cols; ++k) {
        a[r][k] = piv * a[r][k] - f * prow[k];
        mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][c] = 0;
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

// Sparse row: ascending columns, nonzero values.
template <class V>
using SparseRow = std::vector<std::pair<long, V>>;

std::vector<SparseRow<Integer>> integer_rows(const ExactMatrix& m) {
  std::vector<SparseRow<Integer>> rows(m.rows());
  for (const auto& e : m.entries()) rows[e.row].emplace_back(e.col, e.value);
  return rows;
}

// Incremental echelon form: each row is reduced against the pivots found so
// far (keyed by leading column) and becomes a pivot itself if it survives.
// Rows are fed shortest first to limit fill-in.
template <class V, class Eliminate>
long sparse_echelon_rank(std::vector<SparseRow<V>> rows, Eliminate eliminate) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::map<long, SparseRow<V>> pivots;
  for (auto& row : rows) {
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        long lead = row.front().first;
        pivots.emplace(lead, std::move(row));
        break;
      }
      row = eliminate(row, it->second);
    }
  }
  return static_cast<long>(pivots.size());
}

}  // namespace

ExactMatrix assemble_serial(long rows, long cols, const ColumnFn& column) {
  std::vector<MatrixEntry> entries;
  std::vector<std::pair<long, long>> buf;
  for (long c = 0; c < cols; ++c) {
    buf.clear();
    column(c, buf);
    for (auto [r, v] : buf) entries.push_back({r, c, Integer(v)});
  }
  return ExactMatrix::from_triplets(rows, cols, std::move(entries));
}

ExactMatrix assemble_parallel(long rows, long cols, const ColumnFn& column) {
  std::vector<std::vector<std::pair<long, long>>> per_col(cols);
#pragma omp parallel for schedule(dynamic, 16)
  for (long c = 0; c < cols; ++c) column(c, per_col[c]);
  std::vector<MatrixEntry> entries;
  for (long c = 0; c < cols; ++c) {
    for (auto [r, v] : per_col[c]) entries.push_back({r, c, Integer(v)});
  }
  return ExactMatrix::from_triplets(rows, cols, std::move(entries));
}

ExactMatrix assemble(long rows, long cols, const ColumnFn& column, Execution exec) {
  return exec == Execution::Parallel ? assemble_parallel(rows, cols, column) : assemble_serial(rows, cols, column);
}

long rank_mod_p_serial(const ExactMatrix& m, std::uint64_t p) { return rank_mod_p_dense<false>(m, p); }
long rank_mod_p_parallel(const ExactMatrix& m, std::uint64_t p) { return rank_mod_p_dense<true>(m, p); }

long rank_bareiss_serial(const ExactMatrix& m) { return rank_bareiss_dense<false>(m); }
long rank_bareiss_parallel(const ExactMatrix& m) { return rank_bareiss_dense<true>(m); }

long rank_rational_sparse(const ExactMatrix& m) {
  auto eliminate = [](const SparseRow<Integer>& row, const SparseRow<Integer>& piv) {
    Integer g = gcd(row.front().second, piv.front().second);
    Integer a = piv.front().second / g;  // multiplies row
    Integer b = row.front().second / g;  // multiplies pivot
    SparseRow<Integer> out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 1, j = 1;
    while (i < row.size() || j < piv.size()) {
      if (j >= piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.emplace_back(row[i].first, a * row[i].second);
        ++i;
      } else if (i >= row.size() || piv[j].first < row[i].first) {
        out.emplace_back(piv[j].first, -b * piv[j].second);
        ++j;
      } else {
        Integer v = a * row[i].second - b * piv[j].second;
        if (sgn(v) != 0) out.emplace_back(row[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    if (!out.empty()) {
      Integer content = 0;
      for (const auto& [c, v] : out) {
        content = gcd(content, v);
        if (content == 1) break;
      }
      if (content != 1) {
        for (auto& [c, v] : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
      }
    }
    return out;
  };
  return sparse_echelon_rank<Integer>(integer_rows(m), eliminate);
}

long rank_mod_p_sparse(const ExactMatrix& m, std::uint64_t p) {
  check_modulus(p);
  std::vector<SparseRow<std::uint64_t>> rows(m.rows());
  for (const auto& e : m.entries()) {
    std::uint64_t v = reduce(e.value, p);
    if (v != 0) rows[e.row].emplace_back(e.col, v);
  }
  auto eliminate = [p](const SparseRow<std::uint64_t>& row, const SparseRow<std::uint64_t>& piv) {
    // row - f * piv with f = row_lead / piv_lead
    std::uint64_t f = mul_mod(row.front().second, pow_mod(piv.front().second, p - 2, p), p);
    SparseRow<std::uint64_t> out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 1, j = 1;
    while (i < row.size() || j < piv.size()) {
      if (j >= piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.push_back(row[i++]);
      } else {
        std::uint64_t sub = mul_mod(f, piv[j].second, p);
        std::uint64_t v = sub == 0 ? 0 : p - sub;
        long col = piv[j].first;
        if (i < row.size() && row[i].first == col) {
          v = (row[i].second + v) % p;
          ++i;
        }
        ++j;
        if (v != 0) out.emplace_back(col, v);
      }
    }
    return out;
  };
  return sparse_echelon_rank<std::uint64_t>(std::move(rows), eliminate);
}

}  // namespace skos
