#pragma once

// Compute kernels shared by the complex builders and the homology code. Each
// kernel comes in a serial and an OpenMP flavour with identical results; the
// serial one is the reference the tests and benchmark compare against.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "skos/exact_matrix.hpp"

namespace skos {

enum class Execution { Serial, Parallel };

// Column generator: appends (row, value) pairs for column `col`. Must be safe
// to call concurrently for distinct columns.
using ColumnFn = std::function<void(long col, std::vector<std::pair<long, long>>& out)>;

ExactMatrix assemble_serial(long rows, long cols, const ColumnFn& column);
ExactMatrix assemble_parallel(long rows, long cols, const ColumnFn& column);
ExactMatrix assemble(long rows, long cols, const ColumnFn& column, Execution exec);

// Dense Gaussian elimination over F_p.
long rank_mod_p_serial(const ExactMatrix& m, std::uint64_t p);
long rank_mod_p_parallel(const ExactMatrix& m, std::uint64_t p);

// Dense fraction-free (Bareiss) elimination over Z; the rank over Q.
long rank_bareiss_serial(const ExactMatrix& m);
long rank_bareiss_parallel(const ExactMatrix& m);

// Sparse elimination for large, very sparse matrices.
long rank_rational_sparse(const ExactMatrix& m);
long rank_mod_p_sparse(const ExactMatrix& m, std::uint64_t p);

}  // namespace skos
