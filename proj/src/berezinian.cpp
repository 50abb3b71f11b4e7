#include "skos/berezinian.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "skos/errors.hpp"

namespace skos {

using nlohmann::json;

namespace {

int merge_sign(std::uint32_t first, std::uint32_t second) {
  int inversions = 0;
  for (std::uint32_t rest = second; rest; rest &= rest - 1) {
    int b = std::countr_zero(rest);
    inversions += std::popcount(first >> (b + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

void check_gens(int gens) {
  if (gens < 0 || gens > 31) throw InvalidInput("Grassmann generator count must lie in [0, 31]");
}

}  // namespace

GrassmannElement::GrassmannElement(int gens) : gens_(gens) { check_gens(gens); }

GrassmannElement GrassmannElement::scalar(int gens, const Rational& c) {
  GrassmannElement e(gens);
  e.add_term(0, c);
  return e;
}

GrassmannElement GrassmannElement::generator(int gens, int index) {
  if (index < 0 || index >= gens) throw InvalidInput("Grassmann generator index out of range");
  GrassmannElement e(gens);
  e.add_term(std::uint32_t{1} << index, 1);
  return e;
}

Rational GrassmannElement::body() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool GrassmannElement::is_even() const {
  for (const auto& [s, c] : terms_) {
    if (std::popcount(s) & 1) return false;
  }
  return true;
}

bool GrassmannElement::is_odd() const {
  for (const auto& [s, c] : terms_) {
    if (!(std::popcount(s) & 1)) return false;
  }
  return true;
}

void GrassmannElement::add_term(std::uint32_t subset, const Rational& c) {
  if (subset >> gens_) throw InvalidInput("θ index beyond the Grassmann generator count");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(subset, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void GrassmannElement::check_same(const GrassmannElement& o) const {
  if (gens_ != o.gens_) throw InvalidInput("Grassmann elements over different generator counts");
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  check_same(o);
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) {
  check_same(o);
  for (const auto& [s, c] : o.terms_) add_term(s, -c);
  return *this;
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement e = *this;
  for (auto& [s, c] : e.terms_) c = -c;
  return e;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  a.check_same(b);
  GrassmannElement out(a.gens_);
  for (const auto& [sa, ca] : a.terms_) {
    for (const auto& [sb, cb] : b.terms_) {
      if (sa & sb) continue;
      Rational c = ca * cb;
      if (merge_sign(sa, sb) < 0) c = -c;
      out.add_term(sa | sb, c);
    }
  }
  return out;
}

GrassmannElement GrassmannElement::scaled(const Rational& c) const {
  GrassmannElement out(gens_);
  for (const auto& [s, v] : terms_) out.add_term(s, v * c);
  return out;
}

std::string to_string(const GrassmannElement& e) {
  if (e.is_zero()) return "0";
  std::vector<std::pair<std::uint32_t, Rational>> ordered(e.terms().begin(), e.terms().end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    int px = std::popcount(x.first), py = std::popcount(y.first);
    return px != py ? px < py : x.first < y.first;
  });
  std::string out;
  for (const auto& [s, c] : ordered) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    std::string thetas;
    for (int i = 0; i < e.generators(); ++i) {
      if (s >> i & 1) thetas += (thetas.empty() ? "" : "*") + ("t" + std::to_string(i + 1));
    }
    if (thetas.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += thetas;
    } else {
      out += mag.get_str() + "*" + thetas;
    }
  }
  return out;
}

GrassmannElement invert_unit(const GrassmannElement& u) {
  if (!u.is_even()) throw InvalidInput("only even Grassmann elements are inverted");
  Rational b = u.body();
  if (sgn(b) == 0) throw ComputationError("Grassmann element with zero body is not a unit");
  int g = u.generators();
  // u = b(1 + ν) with ν nilpotent of order at most g/2 + 1
  GrassmannElement nu = u.scaled(1 / b);
  nu.add_term(0, -1);
  GrassmannElement minus_nu = -nu;
  GrassmannElement sum = GrassmannElement::scalar(g, 1);
  GrassmannElement power = GrassmannElement::scalar(g, 1);
  for (int k = 1; k <= g / 2; ++k) {
    power = power * minus_nu;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum.scaled(1 / b);
}

GrassmannElement det_even(const GrassmannMatrix& m, int gens) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("determinant of a non-square matrix");
    for (const auto& e : row) {
      if (!e.is_even()) throw InvalidInput("determinant needs even entries");
      if (e.generators() != gens) throw InvalidInput("matrix entries over different generator counts");
    }
  }
  // Laplace expansion along successive rows, memoized on the remaining columns
  std::map<std::uint32_t, GrassmannElement> memo;
  std::function<GrassmannElement(int, std::uint32_t)> minor = [&](int row, std::uint32_t cols) -> GrassmannElement {
    if (row == n) return GrassmannElement::scalar(gens, 1);
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    GrassmannElement acc(gens);
    int seen = 0;
    for (int c = 0; c < n; ++c) {
      if (!(cols >> c & 1)) continue;
      if (!m[row][c].is_zero()) {
        GrassmannElement term = m[row][c] * minor(row + 1, cols & ~(std::uint32_t{1} << c));
        if (seen & 1) {
          acc -= term;
        } else {
          acc += term;
        }
      }
      ++seen;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return minor(0, n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1));
}

namespace {

GrassmannMatrix matmul(const GrassmannMatrix& a, const GrassmannMatrix& b, int gens, int rows, int inner, int cols) {
  GrassmannMatrix out(rows, std::vector<GrassmannElement>(cols, GrassmannElement(gens)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      for (int k = 0; k < inner; ++k) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

GrassmannMatrix matsub(GrassmannMatrix a, const GrassmannMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  }
  return a;
}

// Adjugate over det, for a matrix of even entries.
GrassmannMatrix inverse_even(const GrassmannMatrix& m, int gens) {
  const int n = static_cast<int>(m.size());
  GrassmannElement inv_det = invert_unit(det_even(m, gens));
  GrassmannMatrix out(n, std::vector<GrassmannElement>(n, GrassmannElement(gens)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      GrassmannMatrix sub;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<GrassmannElement> row;
        for (int c = 0; c < n; ++c) {
          if (c != i) row.push_back(m[r][c]);
        }
        sub.push_back(std::move(row));
      }
      GrassmannElement cof = det_even(sub, gens);
      if ((i + j) & 1) cof = -cof;
      out[i][j] = cof * inv_det;
    }
  }
  return out;
}

void check_shape(const SuperMatrix& m) {
  if (m.p < 0 || m.q < 0) throw InvalidInput("block sizes must be nonnegative");
  check_gens(m.gens);
  int n = m.p + m.q;
  if (static_cast<int>(m.entries.size()) != n) throw InvalidInput("supermatrix has the wrong number of rows");
  for (const auto& row : m.entries) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("supermatrix has the wrong number of columns");
    for (const auto& e : row) {
      if (e.generators() != m.gens) throw InvalidInput("entry over a different Grassmann algebra");
    }
  }
}

}  // namespace

SuperMatrix SuperMatrix::identity(int p, int q, int gens) {
  SuperMatrix m{p, q, gens, {}};
  int n = p + q;
  m.entries.assign(n, std::vector<GrassmannElement>(n, GrassmannElement(gens)));
  for (int i = 0; i < n; ++i) m.entries[i][i] = GrassmannElement::scalar(gens, 1);
  return m;
}

GrassmannMatrix SuperMatrix::block(int row0, int rows, int col0, int cols) const {
  GrassmannMatrix out(rows, std::vector<GrassmannElement>(cols, GrassmannElement(gens)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out[i][j] = entries[row0 + i][col0 + j];
  }
  return out;
}

bool SuperMatrix::is_even() const {
  int n = p + q;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool diagonal_block = (i < p) == (j < p);
      const auto& e = entries[i][j];
      if (diagonal_block ? !e.is_even() : !e.is_odd()) return false;
    }
  }
  return true;
}

SuperMatrix SuperMatrix::operator*(const SuperMatrix& o) const {
  if (p != o.p || q != o.q || gens != o.gens) throw InvalidInput("supermatrix product shape mismatch");
  SuperMatrix out{p, q, gens, matmul(entries, o.entries, gens, p + q, p + q, p + q)};
  return out;
}

bool is_invertible(const SuperMatrix& m) {
  check_shape(m);
  if (!m.is_even()) throw InvalidInput("supermatrix is not even");
  return sgn(det_even(m.X(), m.gens).body()) != 0 && sgn(det_even(m.T(), m.gens).body()) != 0;
}

std::pair<GrassmannElement, GrassmannElement> ber_forms(const SuperMatrix& m) {
  if (!is_invertible(m)) throw InvalidInput("supermatrix is not invertible");
  const int p = m.p, q = m.q, g = m.gens;
  auto X = m.X(), Y = m.Y(), Z = m.Z(), T = m.T();
  auto T_inv = inverse_even(T, g);
  auto X_inv = inverse_even(X, g);
  // det(X - Y T⁻¹ Z) · det(T)⁻¹
  auto schur_x = matsub(X, matmul(matmul(Y, T_inv, g, p, q, q), Z, g, p, q, p));
  GrassmannElement first = det_even(schur_x, g) * invert_unit(det_even(T, g));
  // det(X) · det(T - Z X⁻¹ Y)⁻¹
  auto schur_t = matsub(T, matmul(matmul(Z, X_inv, g, q, p, p), Y, g, q, p, q));
  GrassmannElement second = det_even(X, g) * invert_unit(det_even(schur_t, g));
  return {first, second};
}

GrassmannElement ber(const SuperMatrix& m) {
  auto [first, second] = ber_forms(m);
  if (!(first == second)) {
    throw ComputationError("Berezinian closed forms disagree: " + to_string(first) + " vs " + to_string(second));
  }
  return first;
}

std::pair<SuperDim, int> berezinian_module_rank(int p, int q) {
  if (p < 0 || q < 0) throw InvalidInput("rank components must be nonnegative");
  return {q % 2 == 0 ? SuperDim{1, 0} : SuperDim{0, 1}, p};
}

json grassmann_to_json(const GrassmannElement& e) {
  json out = json::array();
  for (const auto& [s, c] : e.terms()) {
    json thetas = json::array();
    for (int i = 0; i < e.generators(); ++i) {
      if (s >> i & 1) thetas.push_back(i + 1);
    }
    out.push_back({{"coeff", c.get_str()}, {"thetas", thetas}});
  }
  return out;
}

GrassmannElement grassmann_from_json(const json& j, int gens) {
  GrassmannElement e(gens);
  if (!j.is_array()) throw InvalidInput("Grassmann entry must be a list of terms");
  for (const auto& term : j) {
    Rational c = term.at("coeff").is_string() ? parse_rational(term.at("coeff").get<std::string>())
                                              : Rational(term.at("coeff").get<long>());
    std::uint32_t subset = 0;
    int last = 0;
    for (const auto& t : term.at("thetas")) {
      int idx = t.get<int>();
      if (idx < 1 || idx > gens) throw InvalidInput("θ index " + std::to_string(idx) + " out of range");
      if (idx <= last) throw InvalidInput("θ indices must be strictly ascending");
      last = idx;
      subset |= std::uint32_t{1} << (idx - 1);
    }
    e.add_term(subset, c);
  }
  return e;
}

json supermatrix_to_json(const SuperMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.entries) {
    json r = json::array();
    for (const auto& e : row) r.push_back(grassmann_to_json(e));
    rows.push_back(r);
  }
  return {{"p", m.p}, {"q", m.q}, {"grassmann_gens", m.gens}, {"entries", rows}};
}

SuperMatrix supermatrix_from_json(const json& j) {
  try {
    SuperMatrix m;
    m.p = j.at("p").get<int>();
    m.q = j.at("q").get<int>();
    m.gens = j.at("grassmann_gens").get<int>();
    if (m.p < 0 || m.q < 0) throw InvalidInput("block sizes must be nonnegative");
    check_gens(m.gens);
    const int n = m.p + m.q;
    const json& entries = j.at("entries");
    m.entries.assign(n, std::vector<GrassmannElement>(n, GrassmannElement(m.gens)));
    // nested rows, or one flat row-major list
    bool nested = entries.size() == static_cast<std::size_t>(n) && n > 0 && entries[0].is_array() &&
                  (entries[0].empty() || entries[0][0].is_array());
    if (nested) {
      for (int i = 0; i < n; ++i) {
        if (entries[i].size() != static_cast<std::size_t>(n)) throw InvalidInput("supermatrix row has wrong length");
        for (int k = 0; k < n; ++k) m.entries[i][k] = grassmann_from_json(entries[i][k], m.gens);
      }
    } else {
      if (entries.size() != static_cast<std::size_t>(n * n)) throw InvalidInput("supermatrix needs (p+q)^2 entries");
      for (int idx = 0; idx < n * n; ++idx) m.entries[idx / n][idx % n] = grassmann_from_json(entries[idx], m.gens);
    }
    return m;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed supermatrix record: ") + e.what());
  }
}

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational small_rational(std::mt19937_64& rng) {
  Rational r(uniform(rng, -3, 3), uniform(rng, 1, 3));
  r.canonicalize();
  return r;
}

GrassmannElement random_element(std::mt19937_64& rng, int gens, bool odd, bool with_body) {
  GrassmannElement e(gens);
  if (with_body) e.add_term(0, small_rational(rng));
  int terms = static_cast<int>(uniform(rng, 0, 2));
  for (int t = 0; t < terms && gens > 0; ++t) {
    std::uint32_t subset = static_cast<std::uint32_t>(rng() % (std::uint64_t{1} << gens));
    if (subset == 0) continue;
    if ((std::popcount(subset) & 1) != (odd ? 1 : 0)) continue;
    e.add_term(subset, small_rational(rng));
  }
  return e;
}

}  // namespace

SuperMatrix random_invertible_supermatrix(std::mt19937_64& rng, int p, int q, int gens) {
  if (p < 0 || q < 0) throw InvalidInput("block sizes must be nonnegative");
  check_gens(gens);
  const int n = p + q;
  for (;;) {
    SuperMatrix m{p, q, gens, GrassmannMatrix(n, std::vector<GrassmannElement>(n, GrassmannElement(gens)))};
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        bool diagonal_block = (i < p) == (k < p);
        m.entries[i][k] = random_element(rng, gens, !diagonal_block, diagonal_block);
      }
    }
    if (is_invertible(m)) return m;
  }
}

}  // namespace skos
