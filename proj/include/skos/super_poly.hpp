#pragma once

// The bigraded supercommutative algebra of differential forms
//   A[x_0..x_m | θ_1..θ_n] ⊗ (dx_0..dx_m, dθ_1..dθ_n)
// with exact coefficients.
//
// Every generator carries an exterior degree (1 for dx, dθ; 0 otherwise) and
// a parity (1 for θ, dθ; 0 otherwise). Two homogeneous factors of exterior
// degrees p, q and parities s, t commute up to (-1)^(pq + st). Consequently
// θ_j and dx_i square to zero while x_i and dθ_j have free powers.
//
// Monomials are stored in the canonical order x^α θ^S dx^E dθ^β with each
// index set ascending. Indices are 0-based in memory; the text format prints
// odd generators 1-based (t1 is θ_1) and even generators 0-based (x0).

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skos/coeff.hpp"
#include "skos/errors.hpp"

namespace skos {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
constexpr Parity parity_of(long k) { return (k & 1) ? Parity::Odd : Parity::Even; }

constexpr int kMaxGenerators = 32;

struct GeneratorSet {
  int even = 0;  // x_0 .. x_{even-1}
  int odd = 0;   // θ_1 .. θ_odd

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;
};

void validate(const GeneratorSet& gens);

enum class GenKind : std::uint8_t { X = 0, Theta = 1, DX = 2, DTheta = 3 };

constexpr int exterior_degree(GenKind k) { return (k == GenKind::DX || k == GenKind::DTheta) ? 1 : 0; }
constexpr int parity_bit(GenKind k) { return (k == GenKind::Theta || k == GenKind::DTheta) ? 1 : 0; }

// Sign picked up when two single generators are swapped.
constexpr int commutation_sign(GenKind a, GenKind b) {
  int e = exterior_degree(a) * exterior_degree(b) + parity_bit(a) * parity_bit(b);
  return (e & 1) ? -1 : 1;
}

struct Generator {
  GenKind kind = GenKind::X;
  int index = 0;  // 0-based
  int exponent = 1;
};

using Word = std::vector<Generator>;

struct SuperMonomial {
  std::vector<int> alpha;   // x exponents; negative only in the localized models of bott
  std::uint32_t theta = 0;  // S
  std::uint32_t dx = 0;     // E
  std::vector<int> beta;    // dθ exponents

  static SuperMonomial one(const GeneratorSet& gens);

  GeneratorSet generators() const {
    return {static_cast<int>(alpha.size()), static_cast<int>(beta.size())};
  }
  int x_degree() const;
  int theta_count() const;
  int dx_count() const;
  int dtheta_degree() const;

  int weight() const { return x_degree() + theta_count() + dx_count() + dtheta_degree(); }
  int lambda_degree() const { return dx_count() + dtheta_degree(); }
  Parity parity() const { return parity_of(theta_count() + dtheta_degree()); }

  auto operator<=>(const SuperMonomial&) const = default;
  bool operator==(const SuperMonomial&) const = default;
};

// Basis order of the multilinear module: lexicographic on (E, β, α, S).
bool basis_less(const SuperMonomial& a, const SuperMonomial& b);

struct SignedMonomial {
  int sign = 1;
  SuperMonomial monomial;
};

// Product of canonical monomials; nullopt when it vanishes.
std::optional<SignedMonomial> multiply(const SuperMonomial& a, const SuperMonomial& b);

// g · m for a single generator g (exponent 1) placed on the left.
std::optional<SignedMonomial> left_multiply(const Generator& g, const SuperMonomial& m);

// i_D(m) = Σ coeff · factor · rest with factor ∈ {x_i, θ_j} multiplied on the
// left of the canonical monomial rest.
struct Contraction {
  long coeff = 0;
  Generator factor;
  SuperMonomial rest;
};
std::vector<Contraction> contractions(const SuperMonomial& m);

// d(m) as a list of (coefficient, canonical monomial).
std::vector<std::pair<long, SuperMonomial>> derivative_terms(const SuperMonomial& m);

// Reorders an arbitrary word into canonical form by adjacent transpositions.
// Slow; kept as the reference the fast paths are checked against.
std::optional<SignedMonomial> normalize_word(const GeneratorSet& gens, const Word& word);

std::string to_string(const SuperMonomial& m, bool dual_forms = false);

// Parses a single monomial such as "x0^2*t1*dx0*dt2^3" ("Dx"/"Dt" accepted for
// dual forms). The generators must already be in canonical order and the
// monomial nonzero.
SuperMonomial parse_monomial(std::string_view text, const GeneratorSet& gens);

template <class R>
class SuperPolynomial {
 public:
  using TermMap = std::map<SuperMonomial, R>;

  explicit SuperPolynomial(GeneratorSet gens = {}) : gens_(gens) {}

  static SuperPolynomial monomial(const SuperMonomial& m, R coeff) {
    SuperPolynomial p(m.generators());
    p.add_term(m, std::move(coeff));
    return p;
  }

  const GeneratorSet& generators() const { return gens_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const SuperMonomial& m, const R& coeff) {
    if (skos::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) {
      it->second += coeff;
      if (skos::is_zero(it->second)) terms_.erase(it);
    }
  }

  SuperPolynomial& operator+=(const SuperPolynomial& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  SuperPolynomial& operator-=(const SuperPolynomial& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
  friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }

  SuperPolynomial scaled(long k) const {
    SuperPolynomial out(gens_);
    if (k == 0) return out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * k);
    return out;
  }
  SuperPolynomial scaled(const R& k) const {
    SuperPolynomial out(gens_);
    for (const auto& [m, c] : terms_) out.add_term(m, c * k);
    return out;
  }

  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
    return a.terms_ == b.terms_ && (a.terms_.empty() || a.gens_ == b.gens_);
  }

  void check_compatible(const SuperPolynomial& other) const {
    if (!(gens_ == other.gens_) && !terms_.empty() && !other.terms_.empty()) {
      throw InvalidInput("polynomials over different generator sets");
    }
  }

 private:
  GeneratorSet gens_;
  TermMap terms_;
};

// Canonical form of coeff · word.
template <class R>
SuperPolynomial<R> normalize(const GeneratorSet& gens, const Word& word, const R& coeff) {
  SuperPolynomial<R> out(gens);
  if (auto sm = normalize_word(gens, word)) out.add_term(sm->monomial, coeff * static_cast<long>(sm->sign));
  return out;
}

template <class R>
SuperPolynomial<R> mul(const SuperPolynomial<R>& f, const SuperPolynomial<R>& g) {
  f.check_compatible(g);
  GeneratorSet gens = f.is_zero() ? g.generators() : f.generators();
  SuperPolynomial<R> out(gens);
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      if (auto prod = multiply(a, b)) out.add_term(prod->monomial, ca * cb * static_cast<long>(prod->sign));
    }
  }
  return out;
}

template <class R>
SuperPolynomial<R> apply_i_D(const SuperPolynomial<R>& f) {
  SuperPolynomial<R> out(f.generators());
  for (const auto& [m, c] : f.terms()) {
    for (const auto& term : contractions(m)) {
      if (auto prod = left_multiply(term.factor, term.rest)) {
        out.add_term(prod->monomial, c * (term.coeff * prod->sign));
      }
    }
  }
  return out;
}

template <class R>
SuperPolynomial<R> apply_d(const SuperPolynomial<R>& f) {
  SuperPolynomial<R> out(f.generators());
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [k, term] : derivative_terms(m)) out.add_term(term, c * k);
  }
  return out;
}

template <class R>
SuperPolynomial<R> weight_component(const SuperPolynomial<R>& f, int weight, int lambda_degree) {
  SuperPolynomial<R> out(f.generators());
  for (const auto& [m, c] : f.terms()) {
    if (m.weight() == weight && m.lambda_degree() == lambda_degree) out.add_term(m, c);
  }
  return out;
}

template <class R>
std::string to_string(const SuperPolynomial<R>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (!first) out += " + ";
    first = false;
    bool unit = to_string(m) == "1";
    if (unit) {
      out += to_string(c);
    } else if (is_one(c)) {
      out += to_string(m);
    } else if (is_minus_one(c)) {
      out += "-" + to_string(m);
    } else {
      out += to_string(c) + "*" + to_string(m);
    }
  }
  return out;
}

SuperPolynomial<Integer> parse_polynomial_z(std::string_view text, const GeneratorSet& gens);
SuperPolynomial<Rational> parse_polynomial_q(std::string_view text, const GeneratorSet& gens);
SuperPolynomial<FpElement> parse_polynomial_fp(std::string_view text, const GeneratorSet& gens,
                                               std::uint64_t modulus);

}  // namespace skos
