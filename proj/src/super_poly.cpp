#include "skos/super_poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>

namespace skos {

namespace {

int popcount(std::uint32_t v) { return std::popcount(v); }

int bits_below(std::uint32_t set, int index) {
  return popcount(set & ((std::uint32_t{1} << index) - 1));
}

// Sign of the shuffle that merges two ascending index sets of anticommuting
// symbols: one transposition per pair (a in first, b in second) with b < a.
int merge_sign(std::uint32_t first, std::uint32_t second) {
  int inversions = 0;
  for (std::uint32_t rest = second; rest; rest &= rest - 1) {
    int b = std::countr_zero(rest);
    inversions += popcount(first >> (b + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

void check_index(const GeneratorSet& gens, const Generator& g) {
  int bound = (g.kind == GenKind::X || g.kind == GenKind::DX) ? gens.even : gens.odd;
  if (g.index < 0 || g.index >= bound) {
    throw InvalidInput("generator index " + std::to_string(g.index) + " out of range");
  }
  if (g.exponent < 0) throw InvalidInput("negative exponent in word");
}

}  // namespace

void validate(const GeneratorSet& gens) {
  if (gens.even < 0 || gens.odd < 0) throw InvalidInput("generator counts must be nonnegative");
  if (gens.even > kMaxGenerators || gens.odd > kMaxGenerators) {
    throw InvalidInput("at most 32 generators of each parity are supported");
  }
}

SuperMonomial SuperMonomial::one(const GeneratorSet& gens) {
  validate(gens);
  SuperMonomial m;
  m.alpha.assign(gens.even, 0);
  m.beta.assign(gens.odd, 0);
  return m;
}

int SuperMonomial::x_degree() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }
int SuperMonomial::theta_count() const { return popcount(theta); }
int SuperMonomial::dx_count() const { return popcount(dx); }
int SuperMonomial::dtheta_degree() const { return std::accumulate(beta.begin(), beta.end(), 0); }

bool basis_less(const SuperMonomial& a, const SuperMonomial& b) {
  if (a.dx != b.dx) return a.dx < b.dx;
  if (a.beta != b.beta) return a.beta < b.beta;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.theta < b.theta;
}

std::optional<SignedMonomial> multiply(const SuperMonomial& a, const SuperMonomial& b) {
  if (a.alpha.size() != b.alpha.size() || a.beta.size() != b.beta.size()) {
    throw InvalidInput("monomials over different generator sets");
  }
  if ((a.theta & b.theta) || (a.dx & b.dx)) return std::nullopt;
  int odd_forms = a.dtheta_degree();
  int sign = merge_sign(a.theta, b.theta) * merge_sign(a.dx, b.dx);
  if (((popcount(b.theta) + popcount(b.dx)) * odd_forms) & 1) sign = -sign;
  SignedMonomial out{sign, a};
  for (std::size_t i = 0; i < a.alpha.size(); ++i) out.monomial.alpha[i] += b.alpha[i];
  for (std::size_t j = 0; j < a.beta.size(); ++j) out.monomial.beta[j] += b.beta[j];
  out.monomial.theta |= b.theta;
  out.monomial.dx |= b.dx;
  return out;
}

std::optional<SignedMonomial> left_multiply(const Generator& g, const SuperMonomial& m) {
  SignedMonomial out{1, m};
  switch (g.kind) {
    case GenKind::X:
      out.monomial.alpha.at(g.index) += 1;
      return out;
    case GenKind::Theta: {
      std::uint32_t bit = std::uint32_t{1} << g.index;
      if (m.theta & bit) return std::nullopt;
      if (bits_below(m.theta, g.index) & 1) out.sign = -1;
      out.monomial.theta |= bit;
      return out;
    }
    case GenKind::DX: {
      std::uint32_t bit = std::uint32_t{1} << g.index;
      if (m.dx & bit) return std::nullopt;
      // passes θ^S freely, then the lower dx's
      if (bits_below(m.dx, g.index) & 1) out.sign = -1;
      out.monomial.dx |= bit;
      return out;
    }
    case GenKind::DTheta: {
      // passes θ^S (parity) and dx^E (exterior degree)
      if ((m.theta_count() + m.dx_count()) & 1) out.sign = -1;
      out.monomial.beta.at(g.index) += 1;
      return out;
    }
  }
  return std::nullopt;
}

std::vector<Contraction> contractions(const SuperMonomial& m) {
  std::vector<Contraction> out;
  int l = 0;
  for (std::uint32_t rest = m.dx; rest; rest &= rest - 1, ++l) {
    int e = std::countr_zero(rest);
    Contraction c{(l & 1) ? -1L : 1L, {GenKind::X, e, 1}, m};
    c.rest.dx &= ~(std::uint32_t{1} << e);
    out.push_back(std::move(c));
  }
  long odd_sign = ((m.dx_count() + m.theta_count()) & 1) ? -1 : 1;
  for (std::size_t j = 0; j < m.beta.size(); ++j) {
    if (m.beta[j] <= 0) continue;
    Contraction c{odd_sign * m.beta[j], {GenKind::Theta, static_cast<int>(j), 1}, m};
    c.rest.beta[j] -= 1;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::pair<long, SuperMonomial>> derivative_terms(const SuperMonomial& m) {
  std::vector<std::pair<long, SuperMonomial>> out;
  for (std::size_t i = 0; i < m.alpha.size(); ++i) {
    std::uint32_t bit = std::uint32_t{1} << i;
    if (m.alpha[i] == 0 || (m.dx & bit)) continue;
    SuperMonomial t = m;
    t.alpha[i] -= 1;
    t.dx |= bit;
    long c = m.alpha[i];
    if (bits_below(m.dx, static_cast<int>(i)) & 1) c = -c;
    out.emplace_back(c, std::move(t));
  }
  int s_count = m.theta_count();
  int e_count = m.dx_count();
  int k = 0;
  for (std::uint32_t rest = m.theta; rest; rest &= rest - 1, ++k) {
    int s = std::countr_zero(rest);
    SuperMonomial t = m;
    t.theta &= ~(std::uint32_t{1} << s);
    t.beta[s] += 1;
    long c = ((s_count - 1 - k + e_count) & 1) ? -1 : 1;
    out.emplace_back(c, std::move(t));
  }
  return out;
}

std::optional<SignedMonomial> normalize_word(const GeneratorSet& gens, const Word& word) {
  validate(gens);
  // expand powers into single letters, then bubble sort
  std::vector<Generator> letters;
  for (const auto& g : word) {
    check_index(gens, g);
    for (int e = 0; e < g.exponent; ++e) letters.push_back({g.kind, g.index, 1});
  }
  auto key = [](const Generator& g) { return std::pair{static_cast<int>(g.kind), g.index}; };
  int sign = 1;
  for (std::size_t pass = 0; pass < letters.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      if (key(letters[i + 1]) < key(letters[i])) {
        sign *= commutation_sign(letters[i].kind, letters[i + 1].kind);
        std::swap(letters[i], letters[i + 1]);
      }
    }
  }
  SignedMonomial out{sign, SuperMonomial::one(gens)};
  for (const auto& g : letters) {
    std::uint32_t bit = std::uint32_t{1} << g.index;
    switch (g.kind) {
      case GenKind::X: out.monomial.alpha[g.index] += 1; break;
      case GenKind::DTheta: out.monomial.beta[g.index] += 1; break;
      case GenKind::Theta:
        if (out.monomial.theta & bit) return std::nullopt;
        out.monomial.theta |= bit;
        break;
      case GenKind::DX:
        if (out.monomial.dx & bit) return std::nullopt;
        out.monomial.dx |= bit;
        break;
    }
  }
  return out;
}

std::string to_string(const SuperMonomial& m, bool dual_forms) {
  std::string out;
  auto append = [&out](const std::string& name, int exponent) {
    if (exponent == 0) return;
    if (!out.empty()) out += '*';
    out += name;
    if (exponent != 1) out += '^' + std::to_string(exponent);
  };
  const char* dxs = dual_forms ? "Dx" : "dx";
  const char* dts = dual_forms ? "Dt" : "dt";
  for (std::size_t i = 0; i < m.alpha.size(); ++i) append("x" + std::to_string(i), m.alpha[i]);
  for (std::size_t j = 0; j < m.beta.size(); ++j) {
    if (m.theta >> j & 1) append("t" + std::to_string(j + 1), 1);
  }
  for (std::size_t i = 0; i < m.alpha.size(); ++i) {
    if (m.dx >> i & 1) append(dxs + std::to_string(i), 1);
  }
  for (std::size_t j = 0; j < m.beta.size(); ++j) append(dts + std::to_string(j + 1), m.beta[j]);
  return out.empty() ? "1" : out;
}

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("malformed " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// One factor: "x0", "t1^2", "dx3", "Dt2^4". Returns nullopt for a numeric factor.
std::optional<Generator> parse_generator(std::string_view f, const GeneratorSet& gens) {
  std::string_view exp_text;
  if (auto caret = f.find('^'); caret != std::string_view::npos) {
    exp_text = f.substr(caret + 1);
    f = f.substr(0, caret);
  }
  Generator g;
  bool odd = false;
  if (f.starts_with("dx") || f.starts_with("Dx")) {
    g.kind = GenKind::DX;
    f.remove_prefix(2);
  } else if (f.starts_with("dt") || f.starts_with("Dt")) {
    g.kind = GenKind::DTheta;
    odd = true;
    f.remove_prefix(2);
  } else if (f.starts_with('x')) {
    g.kind = GenKind::X;
    f.remove_prefix(1);
  } else if (f.starts_with('t')) {
    g.kind = GenKind::Theta;
    odd = true;
    f.remove_prefix(1);
  } else {
    return std::nullopt;
  }
  g.index = parse_int(f, "generator index");
  if (odd) g.index -= 1;
  g.exponent = exp_text.empty() ? 1 : parse_int(exp_text, "exponent");
  check_index(gens, g);
  return g;
}

struct ParsedTerm {
  bool negative = false;
  std::string coeff;  // empty means 1
  Word word;
};

std::vector<ParsedTerm> split_terms(std::string_view text, const GeneratorSet& gens) {
  validate(gens);
  std::vector<ParsedTerm> terms;
  text = trim(text);
  if (text.empty()) throw InvalidInput("empty polynomial text");
  if (text == "0") return terms;
  std::size_t i = 0;
  bool negative = false;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string_view body = trim(text.substr(start, end - start));
    if (body.empty()) throw InvalidInput("dangling sign in polynomial text");
    ParsedTerm t;
    t.negative = negative;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t star = body.find('*', pos);
      if (star == std::string_view::npos) star = body.size();
      std::string_view factor = trim(body.substr(pos, star - pos));
      if (factor.empty()) throw InvalidInput("empty factor in '" + std::string(body) + "'");
      if (auto g = parse_generator(factor, gens)) {
        t.word.push_back(*g);
      } else {
        if (!t.coeff.empty()) throw InvalidInput("two coefficients in one term");
        t.coeff = std::string(factor);
      }
      pos = star + 1;
    }
    terms.push_back(std::move(t));
  };
  // leading sign
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = start = 1;
  }
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '+' || c == '-') {
      // a sign directly after '^', '/' or '*' belongs to a number
      char prev = i > 0 ? text[i - 1] : ' ';
      if (prev == '^' || prev == '/' || prev == '*') continue;
      if (trim(text.substr(start, i - start)).empty()) {
        if (c == '-') negative = !negative;
        start = i + 1;
        continue;
      }
      flush(i);
      negative = c == '-';
      start = i + 1;
    }
  }
  flush(text.size());
  return terms;
}

template <class R, class Parse>
SuperPolynomial<R> build(std::string_view text, const GeneratorSet& gens, Parse parse_coeff, R one) {
  SuperPolynomial<R> out(gens);
  for (const auto& t : split_terms(text, gens)) {
    R c = t.coeff.empty() ? one : parse_coeff(t.coeff);
    if (t.negative) c = -c;
    out += normalize(gens, t.word, c);
  }
  return out;
}

}  // namespace

SuperMonomial parse_monomial(std::string_view text, const GeneratorSet& gens) {
  validate(gens);
  text = trim(text);
  if (text == "1") return SuperMonomial::one(gens);
  Word word;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t star = text.find('*', pos);
    if (star == std::string_view::npos) star = text.size();
    auto g = parse_generator(trim(text.substr(pos, star - pos)), gens);
    if (!g) throw InvalidInput("not a monomial: '" + std::string(text) + "'");
    word.push_back(*g);
    pos = star + 1;
  }
  auto sm = normalize_word(gens, word);
  if (!sm || sm->sign != 1) throw InvalidInput("monomial not in canonical form: '" + std::string(text) + "'");
  return sm->monomial;
}

SuperPolynomial<Integer> parse_polynomial_z(std::string_view text, const GeneratorSet& gens) {
  return build<Integer>(text, gens, [](const std::string& s) { return parse_integer(s); }, Integer(1));
}

SuperPolynomial<Rational> parse_polynomial_q(std::string_view text, const GeneratorSet& gens) {
  return build<Rational>(text, gens, [](const std::string& s) { return parse_rational(s); }, Rational(1));
}

SuperPolynomial<FpElement> parse_polynomial_fp(std::string_view text, const GeneratorSet& gens,
                                               std::uint64_t modulus) {
  FpElement one(1, modulus);
  return build<FpElement>(
      text, gens, [modulus](const std::string& s) { return parse_fp(s, modulus); }, one);
}

}  // namespace skos
