// Serial reference kernels against their OpenMP versions on matrices taken
// from actual complexes. Prints one line per kernel with both timings and
// checks that the results agree.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"

#include "skos/bott.hpp"
#include "skos/complexes.hpp"
#include "skos/kernels.hpp"

using namespace skos;

namespace {

template <class F>
double seconds(int reps, F&& body) {
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

// Largest differential of a weight component.
ExactMatrix largest(const GradedComplex& c) {
  ExactMatrix best(0, 0);
  for (const auto& [k, m] : c.diff_at) {
    if (m.rows() * m.cols() > best.rows() * best.cols()) best = m;
  }
  return best;
}

void report(const std::string& name, double serial, double parallel, bool agree) {
  std::printf("%-34s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name.c_str(), serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skos kernel benchmark"};
  int reps = 3;
  int a = 3, b = 3, weight = 6;
  app.add_option("--reps", reps, "repetitions per kernel")->check(CLI::PositiveNumber);
  app.add_option("--a", a, "even rank of the benchmark complex");
  app.add_option("--b", b, "odd rank of the benchmark complex");
  app.add_option("--weight", weight, "weight of the benchmark complex");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d  complex: Koszul (%d|%d) weight %d\n", omp_get_max_threads(), a, b, weight);
  bool all_agree = true;

  GradedComplex ks, kp;
  double ts = seconds(reps, [&] { ks = build_koszul(a, b, weight, weight, Execution::Serial); });
  double tp = seconds(reps, [&] { kp = build_koszul(a, b, weight, weight, Execution::Parallel); });
  bool agree = ks.diff_at == kp.diff_at;
  all_agree = all_agree && agree;
  report("assemble Koszul differentials", ts, tp, agree);

  ExactMatrix m = largest(ks);
  std::printf("largest differential: %ld x %ld, %zu nonzeros\n", m.rows(), m.cols(), m.nnz());

  const std::uint64_t prime = 2305843009213693951ULL;
  long rs = 0, rp = 0;
  ts = seconds(reps, [&] { rs = rank_mod_p_serial(m, prime); });
  tp = seconds(reps, [&] { rp = rank_mod_p_parallel(m, prime); });
  all_agree = all_agree && rs == rp;
  report("dense rank mod 2^61-1", ts, tp, rs == rp);

  ExactMatrix small = largest(build_koszul(2, 2, 5, 5));
  ts = seconds(reps, [&] { rs = rank_bareiss_serial(small); });
  tp = seconds(reps, [&] { rp = rank_bareiss_parallel(small); });
  all_agree = all_agree && rs == rp;
  report("Bareiss rank (" + std::to_string(small.rows()) + "x" + std::to_string(small.cols()) + ")", ts, tp,
         rs == rp);

  CohomologyTable cs, cp;
  ts = seconds(reps, [&] { cs = cohomology_forms_direct(2, 2, 4, -5, Base::rationals(), Execution::Serial); });
  tp = seconds(reps, [&] { cp = cohomology_forms_direct(2, 2, 4, -5, Base::rationals(), Execution::Parallel); });
  all_agree = all_agree && cs.rows == cp.rows;
  report("direct Bott cell (2,2,4,-5)", ts, tp, cs.rows == cp.rows);

  return all_agree ? 0 : 1;
}
