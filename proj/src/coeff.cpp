#include "skos/coeff.hpp"

#include "skos/errors.hpp"

namespace skos {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t reduce(std::int64_t value, std::uint64_t modulus) {
  auto r = value % static_cast<std::int64_t>(modulus);
  if (r < 0) r += static_cast<std::int64_t>(modulus);
  return static_cast<std::uint64_t>(r);
}

std::string trimmed(std::string_view text) {
  auto begin = text.find_first_not_of(" \t\n");
  if (begin == std::string_view::npos) return {};
  auto end = text.find_last_not_of(" \t\n");
  return std::string(text.substr(begin, end - begin + 1));
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

FpElement::FpElement(std::int64_t value, std::uint64_t modulus) : modulus_(modulus) {
  if (!is_prime(modulus)) {
    throw InvalidInput("F_p requires a prime modulus, got " + std::to_string(modulus));
  }
  if (modulus > (std::uint64_t{1} << 62)) throw InvalidInput("modulus too large for F_p");
  value_ = reduce(value, modulus);
}

void FpElement::check_same(const FpElement& other) const {
  if (modulus_ != other.modulus_) throw InvalidInput("mixing F_p elements of different moduli");
}

FpElement FpElement::inverse() const {
  if (value_ == 0) throw ComputationError("zero has no inverse in F_p");
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = value_, e = modulus_ - 2;
  while (e) {
    if (e & 1) result = mul_mod(result, base, modulus_);
    base = mul_mod(base, base, modulus_);
    e >>= 1;
  }
  FpElement out;
  out.value_ = result;
  out.modulus_ = modulus_;
  return out;
}

FpElement& FpElement::operator+=(const FpElement& other) {
  check_same(other);
  value_ += other.value_;
  if (value_ >= modulus_) value_ -= modulus_;
  return *this;
}

FpElement& FpElement::operator-=(const FpElement& other) {
  check_same(other);
  value_ = value_ >= other.value_ ? value_ - other.value_ : value_ + modulus_ - other.value_;
  return *this;
}

FpElement& FpElement::operator*=(const FpElement& other) {
  check_same(other);
  value_ = mul_mod(value_, other.value_, modulus_);
  return *this;
}

FpElement& FpElement::operator*=(long k) {
  value_ = mul_mod(value_, reduce(k, modulus_), modulus_);
  return *this;
}

FpElement FpElement::operator-() const {
  FpElement out = *this;
  if (value_ != 0) out.value_ = modulus_ - value_;
  return out;
}

std::string to_string(const Integer& c) { return c.get_str(); }

std::string to_string(const Rational& c) { return c.get_str(); }

std::string to_string(const FpElement& c) { return std::to_string(c.value()); }

Integer parse_integer(std::string_view text) {
  auto s = trimmed(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) {
    throw InvalidInput("malformed integer '" + std::string(text) + "'");
  }
  return z;
}

Rational parse_rational(std::string_view text) {
  auto s = trimmed(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(std::string_view(s).substr(0, slash));
  Integer den = parse_integer(std::string_view(s).substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

FpElement parse_fp(std::string_view text, std::uint64_t modulus) {
  Integer z = parse_integer(text);
  Integer r = z % Integer(static_cast<unsigned long>(modulus));
  if (r < 0) r += static_cast<unsigned long>(modulus);
  return FpElement(static_cast<std::int64_t>(r.get_ui()), modulus);
}

}  // namespace skos
