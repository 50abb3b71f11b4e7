#include "skos/exact_linalg.hpp"

#include <algorithm>
#include <charconv>

#include "skos/errors.hpp"

namespace skos {

using nlohmann::json;

namespace {

// Large prime for the modular rank shortcut.
constexpr std::uint64_t kShortcutPrime = 2305843009213693951ULL;  // 2^61 - 1

constexpr long kDenseLimit = 160;  // dense kernels below this many rows and columns

}  // namespace

Base Base::field(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("F_p needs a prime modulus, got " + std::to_string(p));
  return {Kind::Fp, p};
}

Base Base::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.starts_with("Fp:")) {
    std::string_view digits = text.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw InvalidInput("malformed base '" + std::string(text) + "'");
    }
    return field(p);
  }
  throw InvalidInput("unknown base '" + std::string(text) + "' (expected Z, Q or Fp:<prime>)");
}

std::string Base::name() const {
  switch (kind) {
    case Kind::Z: return "Z";
    case Kind::Q: return "Q";
    case Kind::Fp: return "Fp:" + std::to_string(prime);
  }
  return "?";
}

namespace {

using u128 = unsigned __int128;

// Rows and columns of an r×r minor that is nonsingular mod p, where r is the rank mod p.
std::pair<std::vector<long>, std::vector<long>> pivot_minor_mod_p(const ExactMatrix& m, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
  for (const auto& e : m.entries()) {
    Integer v = e.value % Integer(static_cast<unsigned long>(p));
    if (v < 0) v += static_cast<unsigned long>(p);
    a[e.row][e.col] = v.get_ui();
  }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) { return static_cast<std::uint64_t>(u128(x) * y % p); };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mulmod(b, b)) {
      if (e & 1) r = mulmod(r, b);
    }
    return r;
  };
  std::vector<long> row_ids(m.rows());
  for (long i = 0; i < m.rows(); ++i) row_ids[i] = i;
  std::vector<long> prow, pcol;
  long t = 0;
  for (long c = 0; c < m.cols() && t < m.rows(); ++c) {
    long piv = -1;
    for (long r = t; r < m.rows(); ++r) {
      if (a[r][c]) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[t], a[piv]);
    std::swap(row_ids[t], row_ids[piv]);
    std::uint64_t inv = powmod(a[t][c], p - 2);
    for (long r = t + 1; r < m.rows(); ++r) {
      if (!a[r][c]) continue;
      std::uint64_t f = mulmod(a[r][c], inv);
      for (long k = c; k < m.cols(); ++k) {
        if (a[t][k]) a[r][k] = (a[r][k] + p - mulmod(f, a[t][k])) % p;
      }
    }
    prow.push_back(row_ids[t]);
    pcol.push_back(c);
    ++t;
  }
  std::sort(prow.begin(), prow.end());
  return {prow, pcol};
}

// Determinant of a square integer matrix by fraction-free elimination.
Integer det_bareiss(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(a[r][k]) == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return n == 0 ? Integer(1) : Integer(a[n - 1][n - 1] * sign);
}

// Euclidean diagonalization with every entry kept in [0, modulus).
std::vector<Integer> diagonalize_mod(std::vector<std::vector<Integer>> a, long rows, long cols, const Integer& modulus) {
  auto reduce = [&](Integer& v) { mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t()); };
  for (auto& row : a) {
    for (auto& v : row) reduce(v);
  }
  std::vector<Integer> diag;
  long t = 0;
  while (t < rows && t < cols) {
    long pr = -1, pc = -1;
    for (long r = t; r < rows; ++r) {
      for (long c = t; c < cols; ++c) {
        if (sgn(a[r][c]) == 0) continue;
        if (pr < 0 || a[r][c] < a[pr][pc]) {
          pr = r;
          pc = c;
        }
      }
    }
    if (pr < 0) break;
    std::swap(a[t], a[pr]);
    for (long r = 0; r < rows; ++r) std::swap(a[r][t], a[r][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (long r = t + 1; r < rows; ++r) {
        if (sgn(a[r][t]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (long c = t; c < cols; ++c) {
          a[r][c] -= q * a[t][c];
          reduce(a[r][c]);
        }
        if (sgn(a[r][t]) != 0) {
          clean = false;
          std::swap(a[t], a[r]);
        }
      }
      for (long c = t + 1; c < cols; ++c) {
        if (sgn(a[t][c]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
        for (long r = t; r < rows; ++r) {
          a[r][c] -= q * a[r][t];
          reduce(a[r][c]);
        }
        if (sgn(a[t][c]) != 0) {
          clean = false;
          for (long r = 0; r < rows; ++r) std::swap(a[r][t], a[r][c]);
        }
      }
    }
    diag.push_back(gcd(a[t][t], modulus));
    ++t;
  }
  return diag;
}

}  // namespace

// Works modulo N = 2D, D the determinant of a nonsingular r×r minor. Every
// invariant factor divides D, and the zero ones become N, so entries stay
// bounded by N.
SmithResult smith_normal_form(const ExactMatrix& m) {
  SmithResult out;
  const long r = rank(m, Base::rationals(), Execution::Serial);
  out.rank = r;
  if (r == 0) return out;

  std::pair<std::vector<long>, std::vector<long>> minor;
  for (std::uint64_t p : {kShortcutPrime, std::uint64_t{1000000007}, std::uint64_t{998244353}}) {
    minor = pivot_minor_mod_p(m, p);
    if (static_cast<long>(minor.first.size()) == r) break;
  }
  if (static_cast<long>(minor.first.size()) != r) throw ComputationError("no nonsingular minor found for the Smith form");
  Integer d = abs(det_bareiss(m.submatrix(minor.first, minor.second).to_dense()));
  if (sgn(d) == 0) throw ComputationError("pivot minor is singular over Q");
  const Integer modulus = 2 * d;

  std::vector<Integer> diag;
  for (const auto& g : diagonalize_mod(m.to_dense(), m.rows(), m.cols(), modulus)) {
    if (g != modulus) diag.push_back(g);
  }
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      Integer g = gcd(diag[i], diag[j]);
      Integer l = lcm(diag[i], diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  }
  if (static_cast<long>(diag.size()) != r) throw ComputationError("Smith form rank disagrees with the rational rank");
  out.invariant_factors = std::move(diag);
  return out;
}

long rank(const ExactMatrix& m, const Base& base, Execution exec) {
  if (m.is_zero()) return 0;
  bool dense = m.rows() <= kDenseLimit && m.cols() <= kDenseLimit;
  if (base.kind == Base::Kind::Fp) {
    if (!dense) return rank_mod_p_sparse(m, base.prime);
    return exec == Execution::Parallel ? rank_mod_p_parallel(m, base.prime) : rank_mod_p_serial(m, base.prime);
  }
  // rank over F_p never exceeds rank over Q; full rank mod p settles it
  long full = std::min(m.rows(), m.cols());
  if (rank_mod_p_sparse(m, kShortcutPrime) == full) return full;
  if (!dense) return rank_rational_sparse(m);
  return exec == Execution::Parallel ? rank_bareiss_parallel(m) : rank_bareiss_serial(m);
}

long kernel_rank(const ExactMatrix& m, const Base& base, Execution exec) {
  return m.cols() - rank(m, base, exec);
}

namespace {

std::vector<long> ids_with_parity(const std::vector<Parity>& parities, Parity p) {
  std::vector<long> out;
  for (std::size_t i = 0; i < parities.size(); ++i) {
    if (parities[i] == p) out.push_back(static_cast<long>(i));
  }
  return out;
}

void require_known(const GradedComplex& c, int k) {
  if (!c.known(k)) {
    throw WindowError("homology at this position needs position " + std::to_string(k) +
                      ", outside the materialized window [" + std::to_string(c.window_lo) + ", " +
                      std::to_string(c.window_hi) + "]");
  }
}

}  // namespace

HomologySummary homology(const GradedComplex& c, const Base& base, int position, Execution exec) {
  require_known(c, position);
  require_known(c, position - 1);
  require_known(c, position + 1);
  HomologySummary h;
  h.position = position;
  if (!c.in_window(position)) return h;
  const auto here = c.parities(position);
  const auto before = c.parities(position - 1);
  const auto after = c.parities(position + 1);
  const ExactMatrix out = c.outgoing(position);
  const ExactMatrix in = c.incoming(position);
  for (Parity par : {Parity::Even, Parity::Odd}) {
    auto cols_here = ids_with_parity(here, par);
    auto rows_after = ids_with_parity(after, par);
    auto cols_before = ids_with_parity(before, par);
    ExactMatrix out_block = out.submatrix(rows_after, cols_here);
    ExactMatrix in_block = in.submatrix(cols_here, cols_before);
    long z = static_cast<long>(cols_here.size()) - rank(out_block, base, exec);
    long free = 0;
    std::vector<Integer> torsion;
    if (base.kind == Base::Kind::Z) {
      // ker(out) is saturated, so the torsion of ker/im is the torsion of coker(in)
      SmithResult snf = smith_normal_form(in_block);
      free = z - snf.rank;
      for (const auto& d : snf.invariant_factors) {
        if (d > 1) torsion.push_back(d);
      }
    } else {
      free = z - rank(in_block, base, exec);
    }
    if (free < 0) throw ComputationError("negative homology rank: differentials do not compose to zero");
    if (par == Parity::Even) {
      h.free.even = free;
      h.torsion_even = std::move(torsion);
    } else {
      h.free.odd = free;
      h.torsion_odd = std::move(torsion);
    }
  }
  return h;
}

std::vector<HomologySummary> homology_all(const GradedComplex& c, const Base& base, Execution exec) {
  std::vector<HomologySummary> out;
  for (int k = c.window_lo; k <= c.window_hi; ++k) {
    if (c.known(k - 1) && c.known(k + 1)) out.push_back(homology(c, base, k, exec));
  }
  return out;
}

namespace {

std::string list_text(const std::vector<Integer>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + "]";
}

json list_json(const std::vector<Integer>& v) {
  json j = json::array();
  for (const auto& d : v) {
    if (d.fits_slong_p()) {
      j.push_back(d.get_si());
    } else {
      j.push_back(d.get_str());
    }
  }
  return j;
}

std::vector<Integer> list_from_json(const json& j) {
  std::vector<Integer> out;
  for (const auto& e : j) {
    if (e.is_number_integer()) {
      out.emplace_back(e.get<long>());
    } else {
      out.push_back(parse_integer(e.get<std::string>()));
    }
  }
  return out;
}

}  // namespace

std::string to_text(const HomologySummary& h) {
  return "position " + std::to_string(h.position) + ": free " + to_string(h.free) +
         " torsion_even = " + list_text(h.torsion_even) + " torsion_odd = " + list_text(h.torsion_odd);
}

json to_json(const HomologySummary& h) {
  return {{"position", h.position},
          {"even_rank", h.free.even},
          {"odd_rank", h.free.odd},
          {"torsion_even", list_json(h.torsion_even)},
          {"torsion_odd", list_json(h.torsion_odd)}};
}

HomologySummary homology_from_json(const json& j) {
  try {
    HomologySummary h;
    h.position = j.at("position").get<int>();
    h.free.even = j.at("even_rank").get<long long>();
    h.free.odd = j.at("odd_rank").get<long long>();
    h.torsion_even = list_from_json(j.at("torsion_even"));
    h.torsion_odd = list_from_json(j.at("torsion_odd"));
    return h;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed homology record: ") + e.what());
  }
}

}  // namespace skos
