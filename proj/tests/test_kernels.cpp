#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "skos/exact_linalg.hpp"
#include "skos/kernels.hpp"

using namespace skos;

namespace {

ExactMatrix random_low_rank(std::mt19937_64& rng, long rows, long cols, long inner) {
  // product of two sparse random factors, so rank <= inner
  std::vector<MatrixEntry> a, b;
  for (long r = 0; r < rows; ++r) {
    for (long k = 0; k < inner; ++k) {
      if (rng() % 4 == 0) a.push_back({r, k, Integer(static_cast<long>(rng() % 7) - 3)});
    }
  }
  for (long k = 0; k < inner; ++k) {
    for (long c = 0; c < cols; ++c) {
      if (rng() % 4 == 0) b.push_back({k, c, Integer(static_cast<long>(rng() % 7) - 3)});
    }
  }
  return ExactMatrix::from_triplets(rows, inner, a) * ExactMatrix::from_triplets(inner, cols, b);
}

}  // namespace

TEST_CASE("parallel assembly equals serial assembly") {
  auto column = [](long col, std::vector<std::pair<long, long>>& out) {
    for (long r = col % 3; r < 40; r += 1 + col % 5) out.push_back({r, (col * 7 + r) % 11 - 5});
    out.push_back({col % 40, 1});
  };
  ExactMatrix s = assemble_serial(40, 60, column);
  ExactMatrix p = assemble_parallel(40, 60, column);
  CHECK(s == p);
  CHECK(assemble(40, 60, column, Execution::Parallel) == s);
}

TEST_CASE("rank kernels agree") {
  std::mt19937_64 rng(29);
  const std::uint64_t prime = 1000003;
  for (int trial = 0; trial < 40; ++trial) {
    long rows = 5 + rng() % 60, cols = 5 + rng() % 60, inner = 1 + rng() % 40;
    ExactMatrix m = random_low_rank(rng, rows, cols, inner);
    long reference = smith_normal_form(m).rank;
    CHECK(rank_bareiss_serial(m) == reference);
    CHECK(rank_bareiss_parallel(m) == reference);
    CHECK(rank_rational_sparse(m) == reference);
    long fp = rank_mod_p_serial(m, prime);
    CHECK(rank_mod_p_parallel(m, prime) == fp);
    CHECK(rank_mod_p_sparse(m, prime) == fp);
    CHECK(fp <= reference);
  }
}

TEST_CASE("rank mod small primes sees the torsion") {
  auto m = ExactMatrix::from_dense({{Integer(2), Integer(4)}, {Integer(6), Integer(8)}});
  CHECK(rank_mod_p_serial(m, 2) == 0);
  CHECK(rank_mod_p_sparse(m, 2) == 0);
  CHECK(rank_mod_p_serial(m, 3) == 2);
  CHECK(rank_mod_p_parallel(m, 3) == 2);
  CHECK(rank_bareiss_serial(m) == 2);
}

TEST_CASE("degenerate shapes") {
  ExactMatrix empty(0, 5);
  CHECK(rank_bareiss_serial(empty) == 0);
  CHECK(rank_rational_sparse(empty) == 0);
  CHECK(rank_mod_p_serial(ExactMatrix(4, 0), 7) == 0);
  CHECK(rank_mod_p_sparse(ExactMatrix(3, 3), 7) == 0);
}
