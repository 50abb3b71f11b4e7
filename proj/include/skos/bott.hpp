#pragma once

// Cohomology of O(r) and of Ω^p(r) on projective superspace P^{m|n}, by
// closed formulas and by direct rank computations on Koszul-type complexes.

#include <string>
#include <vector>

#include "json.hpp"

#include "skos/exact_linalg.hpp"
#include "skos/kernels.hpp"
#include "skos/multilinear.hpp"

namespace skos {

enum class EllKind { Zero, Top };

struct EllDims {
  long long plus = 0;
  long long minus = 0;

  friend bool operator==(const EllDims&, const EllDims&) = default;
};

// Rank of B_r (Zero) or of the degree-r part of the local cohomology module (Top).
EllDims ell(int r, EllKind which, int m, int n);

// Alternating sums of λ·ℓ products giving h^0 (Zero) and h^m (Top) of Ω^p(r).
SuperDim delta(int p, int r, EllKind which, int m, int n);

enum class BottMethod { Formula, Direct, Both };
std::string to_string(BottMethod method);
BottMethod parse_bott_method(std::string_view text);

struct CohomologyTable {
  int m = 0;
  int n = 0;
  int p = 0;
  int r = 0;
  std::string method;          // "formula", "direct", "both", or "line-bundle"
  std::vector<SuperDim> rows;  // rows[i] = H^i, i = 0..m

  friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

CohomologyTable cohomology_line_bundle(int m, int n, int r);
CohomologyTable cohomology_forms_formula(int m, int n, int p, int r);
CohomologyTable cohomology_forms_direct(int m, int n, int p, int r, const Base& base = Base::rationals(),
                                        Execution exec = Execution::Parallel);

// Cells (p, r) for p = 0..p_max and r = r_min..r_max, p-major. With Both the
// formula and direct tables must agree wherever r != 0.
std::vector<CohomologyTable> bott_table(int m, int n, int p_max, int r_min, int r_max, BottMethod method,
                                        const Base& base = Base::rationals(),
                                        Execution exec = Execution::Parallel);

// Monomials x^{-α-1} θ^S dx^E dθ^β (stored with negative x exponents) of
// exterior degree p and weight r over x_0..x_m, θ_1..θ_n.
FreeBasis local_cohomology_basis(int m, int n, int p, int r);

// Forms over x_0^{±1}, θ_1..θ_n of exterior degree p and weight r.
FreeBasis laurent_basis(int n, int p, int r);

std::string tables_csv(const std::vector<CohomologyTable>& tables);
nlohmann::json to_json(const CohomologyTable& t);
CohomologyTable table_from_json(const nlohmann::json& j);

}  // namespace skos
