#pragma once

// Supermatrices over the Grassmann algebra Q[θ_1..θ_g] and the Berezin
// determinant.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "skos/coeff.hpp"
#include "skos/multilinear.hpp"

namespace skos {

class GrassmannElement {
 public:
  explicit GrassmannElement(int gens = 0);
  static GrassmannElement scalar(int gens, const Rational& c);
  // θ_{index+1}
  static GrassmannElement generator(int gens, int index);

  int generators() const { return gens_; }
  const std::map<std::uint32_t, Rational>& terms() const { return terms_; }
  Rational body() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_even() const;
  bool is_odd() const;

  void add_term(std::uint32_t subset, const Rational& c);

  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator-=(const GrassmannElement& o);
  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  GrassmannElement operator-() const;
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
  GrassmannElement scaled(const Rational& c) const;

  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
    return a.gens_ == b.gens_ && a.terms_ == b.terms_;
  }

 private:
  void check_same(const GrassmannElement& o) const;

  int gens_ = 0;
  std::map<std::uint32_t, Rational> terms_;
};

std::string to_string(const GrassmannElement& e);

// Inverse of an even element with invertible body, by the finite geometric
// series over its nilpotent part.
GrassmannElement invert_unit(const GrassmannElement& u);

using GrassmannMatrix = std::vector<std::vector<GrassmannElement>>;

// Determinant of a square matrix of even (hence commuting) elements.
GrassmannElement det_even(const GrassmannMatrix& m, int gens);

// Block matrix (X Y; Z T) with X of size p×p and T of size q×q.
struct SuperMatrix {
  int p = 0;
  int q = 0;
  int gens = 0;
  GrassmannMatrix entries;  // (p+q)×(p+q), row-major

  static SuperMatrix identity(int p, int q, int gens);

  GrassmannMatrix block(int row0, int rows, int col0, int cols) const;
  GrassmannMatrix X() const { return block(0, p, 0, p); }
  GrassmannMatrix Y() const { return block(0, p, p, q); }
  GrassmannMatrix Z() const { return block(p, q, 0, p); }
  GrassmannMatrix T() const { return block(p, q, p, q); }

  // X, T entries even and Y, Z entries odd.
  bool is_even() const;
  SuperMatrix operator*(const SuperMatrix& o) const;

  friend bool operator==(const SuperMatrix&, const SuperMatrix&) = default;
};

bool is_invertible(const SuperMatrix& m);

// The two closed forms det(X - Y T⁻¹ Z)·det(T)⁻¹ and det(X)·det(T - Z X⁻¹ Y)⁻¹.
std::pair<GrassmannElement, GrassmannElement> ber_forms(const SuperMatrix& m);

// Common value of both closed forms; a mismatch raises ComputationError.
GrassmannElement ber(const SuperMatrix& m);

// Rank and cohomological degree of the Berezinian module of A^{p|q}.
std::pair<SuperDim, int> berezinian_module_rank(int p, int q);

nlohmann::json grassmann_to_json(const GrassmannElement& e);
GrassmannElement grassmann_from_json(const nlohmann::json& j, int gens);
nlohmann::json supermatrix_to_json(const SuperMatrix& m);
SuperMatrix supermatrix_from_json(const nlohmann::json& j);

// Invertible even supermatrix with small rational coefficients.
SuperMatrix random_invertible_supermatrix(std::mt19937_64& rng, int p, int q, int gens);

}  // namespace skos
