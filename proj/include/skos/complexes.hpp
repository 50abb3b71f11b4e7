#pragma once

// Weight-n components of the Koszul, De Rham and Berezinian complexes of a
// free supermodule L = A^{a|b}, and the Koszul complex of a linear form.
//
// Positions are cohomological: every differential maps position k to k + 1.
// Koszul components live at positions -p (Λ^p L ⊗ S^{n-p} L), De Rham ones at
// +p, Berezinian ones at +i (dual of Λ^i L, tensored with S^{n+i} L).

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "skos/exact_matrix.hpp"
#include "skos/kernels.hpp"
#include "skos/multilinear.hpp"

namespace skos {

enum class ComplexKind { Koszul, DeRham, Berezinian, SpecializedKoszul };

std::string to_string(ComplexKind kind);
ComplexKind parse_complex_kind(std::string_view text);

struct GradedComplex {
  ComplexKind kind = ComplexKind::Koszul;
  int a = 0;
  int b = 0;
  int weight = 0;            // unused for SpecializedKoszul
  std::vector<long> omega;   // SpecializedKoszul only
  int direction = -1;        // -1 for contractions (Koszul), +1 for d and the Berezinian
  int window_lo = 0;
  int window_hi = 0;
  bool zero_below = false;   // every position < window_lo is the zero module
  bool zero_above = false;   // every position > window_hi is the zero module
  std::map<int, FreeBasis> basis_at;
  std::map<int, ExactMatrix> diff_at;  // position k -> k + 1; rows index the target basis

  std::vector<int> positions() const;
  bool in_window(int k) const { return k >= window_lo && k <= window_hi; }
  // True when the module at k is known: materialized or provably zero.
  bool known(int k) const;
  // Rank of the module at k; zero outside the window when known, throws otherwise.
  long module_size(int k) const;
  std::vector<Parity> parities(int k) const;
  // The differential leaving k, as a matrix even when a neighbour is zero.
  ExactMatrix outgoing(int k) const;
  ExactMatrix incoming(int k) const;
};

struct ComplexSpec {
  ComplexKind kind = ComplexKind::Koszul;
  int a = 0;
  int b = 0;
  int weight = 0;
  int cap = 6;
  std::vector<long> omega;
};

GradedComplex build_koszul(int a, int b, int n, int cap, Execution exec = Execution::Parallel);
GradedComplex build_derham(int a, int b, int n, int cap, Execution exec = Execution::Parallel);
GradedComplex build_berezinian(int a, int b, int n, int cap, Execution exec = Execution::Parallel);
GradedComplex specialize_koszul(int a, int b, const std::vector<long>& omega, int cap,
                                Execution exec = Execution::Parallel);
GradedComplex build_complex(const ComplexSpec& spec, Execution exec = Execution::Parallel);

// How x-multiplication acts on coefficient monomials when i_D is applied.
enum class CoefficientModel {
  Polynomial,       // ordinary polynomials
  Laurent,          // x exponents may be any integer
  LocalCohomology,  // x exponents must stay <= -1; leaving the cone gives zero
};

// Matrix of i_D from `source` to `target` under the given coefficient model.
// Every nonzero image must lie in the target basis.
ExactMatrix contraction_matrix(const FreeBasis& source, const FreeBasis& target, CoefficientModel model,
                               Execution exec = Execution::Parallel);

// Matrix of d from `source` to `target`.
ExactMatrix derivative_matrix(const FreeBasis& source, const FreeBasis& target,
                              Execution exec = Execution::Parallel);

// Versioned record: {"format": "skos-complex", "version": 1, ...}.
nlohmann::json complex_to_json(const GradedComplex& c);
GradedComplex complex_from_json(const nlohmann::json& j);

}  // namespace skos
