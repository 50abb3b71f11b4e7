#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "skos/complexes.hpp"
#include "skos/exact_matrix.hpp"
#include "skos/kernels.hpp"
#include "skos/multilinear.hpp"

namespace skos {

// Coefficient ring for homology: Z, Q, or a prime field F_p.
struct Base {
  enum class Kind { Z, Q, Fp };
  Kind kind = Kind::Z;
  std::uint64_t prime = 0;

  static Base integers() { return {Kind::Z, 0}; }
  static Base rationals() { return {Kind::Q, 0}; }
  static Base field(std::uint64_t p);
  // "Z", "Q" or "Fp:<prime>"
  static Base parse(std::string_view text);
  std::string name() const;

  friend bool operator==(const Base&, const Base&) = default;
};

struct SmithResult {
  std::vector<Integer> invariant_factors;  // d_1 | d_2 | ... | d_rank, all positive
  long rank = 0;
};

SmithResult smith_normal_form(const ExactMatrix& m);

// Rank over Q (for Z and Q) or over F_p.
long rank(const ExactMatrix& m, const Base& base, Execution exec = Execution::Parallel);
long kernel_rank(const ExactMatrix& m, const Base& base, Execution exec = Execution::Parallel);

struct HomologySummary {
  int position = 0;
  SuperDim free;
  std::vector<Integer> torsion_even;
  std::vector<Integer> torsion_odd;

  bool is_zero() const { return free.total() == 0 && torsion_even.empty() && torsion_odd.empty(); }
  friend bool operator==(const HomologySummary&, const HomologySummary&) = default;
};

// Homology at one position. Throws WindowError unless the position and both
// neighbours are materialized or provably zero.
HomologySummary homology(const GradedComplex& c, const Base& base, int position,
                         Execution exec = Execution::Parallel);

// Homology at every position of the window where it is defined.
std::vector<HomologySummary> homology_all(const GradedComplex& c, const Base& base,
                                          Execution exec = Execution::Parallel);

std::string to_text(const HomologySummary& h);
nlohmann::json to_json(const HomologySummary& h);
HomologySummary homology_from_json(const nlohmann::json& j);

}  // namespace skos
