#include "skos/bott.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

#include "skos/complexes.hpp"
#include "skos/errors.hpp"

namespace skos {

using nlohmann::json;

EllDims ell(int r, EllKind which, int m, int n) {
  EllDims d;
  for (int i = 0; i <= n; ++i) {
    long long top = which == EllKind::Zero ? m + r - i : i - r - 1;
    long long c = binomial(top, m) * binomial(n, i);
    (i % 2 == 0 ? d.plus : d.minus) += c;
  }
  return d;
}

SuperDim delta(int p, int r, EllKind which, int m, int n) {
  SuperDim d;
  for (int j = 0; j <= p; ++j) {
    SuperDim lam = rank_lambda(p - j, m, n);
    EllDims l = ell(r - p + j, which, m, n);
    long long sign = (j % 2 == 0) ? 1 : -1;
    d.even += sign * (lam.even * l.plus + lam.odd * l.minus);
    d.odd += sign * (lam.even * l.minus + lam.odd * l.plus);
  }
  return d;
}

std::string to_string(BottMethod method) {
  switch (method) {
    case BottMethod::Formula: return "formula";
    case BottMethod::Direct: return "direct";
    case BottMethod::Both: return "both";
  }
  return "?";
}

BottMethod parse_bott_method(std::string_view text) {
  if (text == "formula") return BottMethod::Formula;
  if (text == "direct") return BottMethod::Direct;
  if (text == "both") return BottMethod::Both;
  throw InvalidInput("unknown method '" + std::string(text) + "' (expected formula, direct or both)");
}

namespace {

void check_mn(int m, int n) {
  if (m < 0 || n < 0) throw InvalidInput("m and n must be nonnegative");
  validate(GeneratorSet{m + 1, n});
}

CohomologyTable empty_table(int m, int n, int p, int r, std::string method) {
  CohomologyTable t{m, n, p, r, std::move(method), {}};
  t.rows.assign(m + 1, SuperDim{});
  return t;
}

FreeBasis empty_basis(int a, int b) { return FreeBasis{GeneratorSet{a, b}, {}, false}; }

std::vector<long> parity_ids(const FreeBasis& basis, Parity p) {
  std::vector<long> out;
  for (std::size_t i = 0; i < basis.entries.size(); ++i) {
    if (basis.entries[i].parity() == p) out.push_back(static_cast<long>(i));
  }
  return out;
}

// Parity-split rank of a parity-preserving map.
SuperDim split_rank(const ExactMatrix& map, const FreeBasis& source, const FreeBasis& target, const Base& base,
                    Execution exec) {
  SuperDim d;
  for (Parity par : {Parity::Even, Parity::Odd}) {
    long rk = rank(map.submatrix(parity_ids(target, par), parity_ids(source, par)), base, exec);
    (par == Parity::Even ? d.even : d.odd) = rk;
  }
  return d;
}

SuperDim kernel_dims(const FreeBasis& source, const FreeBasis& target, CoefficientModel model, const Base& base,
                     Execution exec) {
  SuperDim d = source.dim();
  if (source.size() == 0 || target.size() == 0) return d;
  SuperDim rk = split_rank(contraction_matrix(source, target, model, exec), source, target, base, exec);
  return {d.even - rk.even, d.odd - rk.odd};
}

SuperDim image_dims(const FreeBasis& source, const FreeBasis& target, CoefficientModel model, const Base& base,
                    Execution exec) {
  if (source.size() == 0 || target.size() == 0) return {};
  return split_rank(contraction_matrix(source, target, model, exec), source, target, base, exec);
}

// Koszul component Λ^q L ⊗ S^{r-q} L of L = A^{m+1|n}; zero outside its support.
FreeBasis koszul_piece(int m, int n, int q, int r) {
  if (q < 0 || r - q < 0) return empty_basis(m + 1, n);
  return basis_lambda_sym(m + 1, n, q, r - q);
}

// H at position -q of the weight-r Koszul complex.
SuperDim koszul_homology(int m, int n, int q, int r, const Base& base, Execution exec) {
  if (q < 0 || r < 0) return {};
  FreeBasis here = koszul_piece(m, n, q, r);
  SuperDim z = kernel_dims(here, koszul_piece(m, n, q - 1, r), CoefficientModel::Polynomial, base, exec);
  SuperDim b = image_dims(koszul_piece(m, n, q + 1, r), here, CoefficientModel::Polynomial, base, exec);
  return {z.even - b.even, z.odd - b.odd};
}

}  // namespace

FreeBasis local_cohomology_basis(int m, int n, int p, int r) {
  check_mn(m, n);
  const int a = m + 1;
  FreeBasis basis = empty_basis(a, n);
  if (p < 0) return basis;
  for (int e = 0; e <= std::min(p, a); ++e) {
    for_each_subset(a, e, [&](std::uint32_t dx) {
      for_each_composition(n, p - e, [&](const std::vector<int>& beta) {
        for (int s = 0; s <= n; ++s) {
          // weight = -(m+1) - |α| + |S| + p
          int alpha_total = s + p - r - a;
          if (alpha_total < 0) continue;
          for_each_subset(n, s, [&](std::uint32_t theta) {
            for_each_composition(a, alpha_total, [&](const std::vector<int>& alpha) {
              std::vector<int> exps(a);
              for (int i = 0; i < a; ++i) exps[i] = -alpha[i] - 1;
              basis.entries.push_back(SuperMonomial{exps, theta, dx, beta});
            });
          });
        }
      });
    });
  }
  std::sort(basis.entries.begin(), basis.entries.end(), basis_less);
  return basis;
}

FreeBasis laurent_basis(int n, int p, int r) {
  check_mn(0, n);
  FreeBasis basis = empty_basis(1, n);
  if (p < 0) return basis;
  for (int e = 0; e <= std::min(p, 1); ++e) {
    for_each_composition(n, p - e, [&](const std::vector<int>& beta) {
      for (int s = 0; s <= n; ++s) {
        for_each_subset(n, s, [&](std::uint32_t theta) {
          std::vector<int> alpha{r - p - s};
          basis.entries.push_back(SuperMonomial{alpha, theta, static_cast<std::uint32_t>(e), beta});
        });
      }
    });
  }
  std::sort(basis.entries.begin(), basis.entries.end(), basis_less);
  return basis;
}

CohomologyTable cohomology_line_bundle(int m, int n, int r) {
  check_mn(m, n);
  CohomologyTable t = empty_table(m, n, 0, r, "line-bundle");
  if (m == 0) {
    // ⊕_j x^{r-j} A[θ]_j
    for (int j = 0; j <= n; ++j) (j % 2 == 0 ? t.rows[0].even : t.rows[0].odd) += binomial(n, j);
    return t;
  }
  EllDims zero = ell(r, EllKind::Zero, m, n);
  EllDims top = ell(r, EllKind::Top, m, n);
  t.rows[0] = {zero.plus, zero.minus};
  t.rows[m] = {top.plus, top.minus};
  return t;
}

CohomologyTable cohomology_forms_direct(int m, int n, int p, int r, const Base& base, Execution exec) {
  check_mn(m, n);
  if (p < 0) throw InvalidInput("form degree p must be nonnegative");
  CohomologyTable t = empty_table(m, n, p, r, "direct");
  if (m == 0) {
    t.rows[0] = kernel_dims(laurent_basis(n, p, r), laurent_basis(n, p - 1, r), CoefficientModel::Laurent, base, exec);
    return t;
  }
  if (r >= 0) {
    t.rows[0] = kernel_dims(koszul_piece(m, n, p, r), koszul_piece(m, n, p - 1, r), CoefficientModel::Polynomial,
                            base, exec);
    for (int i = 1; i < m; ++i) t.rows[i] = koszul_homology(m, n, p - i, r, base, exec);
  }
  if (r != 0) {
    t.rows[m] = kernel_dims(local_cohomology_basis(m, n, p, r), local_cohomology_basis(m, n, p - 1, r),
                            CoefficientModel::LocalCohomology, base, exec);
  } else {
    // A at p = m, extended by the boundaries of the local cohomology complex
    SuperDim b = image_dims(local_cohomology_basis(m, n, p + 1, 0), local_cohomology_basis(m, n, p, 0),
                            CoefficientModel::LocalCohomology, base, exec);
    if (p == m) b.even += 1;
    t.rows[m] = b;
  }
  return t;
}

CohomologyTable cohomology_forms_formula(int m, int n, int p, int r) {
  check_mn(m, n);
  if (p < 0) throw InvalidInput("form degree p must be nonnegative");
  CohomologyTable t = empty_table(m, n, p, r, "formula");
  if (r != 0) {
    t.rows[0] = delta(p, r, EllKind::Zero, m, n);
    if (m > 0) t.rows[m] = delta(p, r, EllKind::Top, m, n);
    return t;
  }
  if (m == 0) {
    t.rows[0] = cohomology_forms_direct(0, n, p, 0, Base::rationals()).rows[0];
    return t;
  }
  for (int i = 0; i < m; ++i) {
    if (p == i) t.rows[i] = {1, 0};
  }
  if (p < m + 1 - n) {
    if (p == m) t.rows[m] = {1, 0};
  } else {
    t.rows[m] = cohomology_forms_direct(m, n, p, 0, Base::rationals()).rows[m];
  }
  return t;
}

std::vector<CohomologyTable> bott_table(int m, int n, int p_max, int r_min, int r_max, BottMethod method,
                                        const Base& base, Execution exec) {
  check_mn(m, n);
  if (p_max < 0) throw InvalidInput("p_max must be nonnegative");
  std::vector<std::pair<int, int>> cells;
  for (int p = 0; p <= p_max; ++p) {
    for (int r = r_min; r <= r_max; ++r) cells.emplace_back(p, r);
  }
  const long count = static_cast<long>(cells.size());
  std::vector<CohomologyTable> out(count);
  std::vector<std::exception_ptr> errors(count);
  auto cell = [&](long k) {
    auto [p, r] = cells[k];
    switch (method) {
      case BottMethod::Formula:
        out[k] = cohomology_forms_formula(m, n, p, r);
        break;
      case BottMethod::Direct:
        out[k] = cohomology_forms_direct(m, n, p, r, base, Execution::Serial);
        break;
      case BottMethod::Both: {
        CohomologyTable f = cohomology_forms_formula(m, n, p, r);
        CohomologyTable d = cohomology_forms_direct(m, n, p, r, base, Execution::Serial);
        if (r != 0 && f.rows != d.rows) {
          std::ostringstream msg;
          msg << "formula and direct methods disagree at m=" << m << " n=" << n << " p=" << p << " r=" << r;
          for (int i = 0; i <= m; ++i) {
            msg << "; H^" << i << " " << to_string(f.rows[i]) << " vs " << to_string(d.rows[i]);
          }
          throw ComputationError(msg.str());
        }
        f.method = "both";
        out[k] = std::move(f);
        break;
      }
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < count; ++k) {
      try {
        cell(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  } else {
    for (long k = 0; k < count; ++k) {
      try {
        cell(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string tables_csv(const std::vector<CohomologyTable>& tables) {
  std::string out = "m,n,p,r,i,even,odd,method\n";
  for (const auto& t : tables) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      out += std::to_string(t.m) + "," + std::to_string(t.n) + "," + std::to_string(t.p) + "," +
             std::to_string(t.r) + "," + std::to_string(i) + "," + std::to_string(t.rows[i].even) + "," +
             std::to_string(t.rows[i].odd) + "," + t.method + "\n";
    }
  }
  return out;
}

json to_json(const CohomologyTable& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    rows.push_back({{"i", i}, {"even", t.rows[i].even}, {"odd", t.rows[i].odd}});
  }
  return {{"m", t.m}, {"n", t.n}, {"p", t.p}, {"r", t.r}, {"method", t.method}, {"rows", rows}};
}

CohomologyTable table_from_json(const json& j) {
  try {
    CohomologyTable t;
    t.m = j.at("m").get<int>();
    t.n = j.at("n").get<int>();
    t.p = j.at("p").get<int>();
    t.r = j.at("r").get<int>();
    t.method = j.at("method").get<std::string>();
    check_mn(t.m, t.n);
    t.rows.assign(t.m + 1, SuperDim{});
    for (const auto& row : j.at("rows")) {
      int i = row.at("i").get<int>();
      if (i < 0 || i > t.m) throw InvalidInput("cohomology row index out of range");
      t.rows[i] = {row.at("even").get<long long>(), row.at("odd").get<long long>()};
    }
    return t;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed cohomology record: ") + e.what());
  }
}

}  // namespace skos
