#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace skos {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_prime(std::uint64_t n);

// Element of the prime field F_p. The modulus travels with the value so
// polynomials over different primes cannot be mixed silently.
class FpElement {
 public:
  FpElement() = default;
  FpElement(std::int64_t value, std::uint64_t modulus);

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }

  FpElement inverse() const;

  FpElement& operator+=(const FpElement& other);
  FpElement& operator-=(const FpElement& other);
  FpElement& operator*=(const FpElement& other);
  FpElement& operator*=(long k);

  friend FpElement operator+(FpElement a, const FpElement& b) { return a += b; }
  friend FpElement operator-(FpElement a, const FpElement& b) { return a -= b; }
  friend FpElement operator*(FpElement a, const FpElement& b) { return a *= b; }
  friend FpElement operator*(FpElement a, long k) { return a *= k; }
  friend FpElement operator*(long k, FpElement a) { return a *= k; }
  FpElement operator-() const;

  friend bool operator==(const FpElement& a, const FpElement& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

 private:
  void check_same(const FpElement& other) const;

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

inline bool is_zero(const Integer& c) { return sgn(c) == 0; }
inline bool is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool is_zero(const FpElement& c) { return c.value() == 0; }

inline bool is_one(const Integer& c) { return c == 1; }
inline bool is_one(const Rational& c) { return c == 1; }
inline bool is_one(const FpElement& c) { return c.value() == 1; }

inline bool is_minus_one(const Integer& c) { return c == -1; }
inline bool is_minus_one(const Rational& c) { return c == -1; }
inline bool is_minus_one(const FpElement& c) {
  return c.modulus() > 2 && c.value() == c.modulus() - 1;
}

std::string to_string(const Integer& c);
std::string to_string(const Rational& c);
std::string to_string(const FpElement& c);

// Parses "-12", "3/4" (rationals only) or a field representative. Throws
// InvalidInput on malformed text.
Integer parse_integer(std::string_view text);
Rational parse_rational(std::string_view text);
FpElement parse_fp(std::string_view text, std::uint64_t modulus);

}  // namespace skos
