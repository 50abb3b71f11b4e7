#include "skos/complexes.hpp"

#include <algorithm>
#include <climits>

#include "skos/errors.hpp"

namespace skos {

using nlohmann::json;

std::string to_string(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::Koszul: return "koszul";
    case ComplexKind::DeRham: return "derham";
    case ComplexKind::Berezinian: return "berezinian";
    case ComplexKind::SpecializedKoszul: return "specialized-koszul";
  }
  return "?";
}

ComplexKind parse_complex_kind(std::string_view text) {
  if (text == "koszul") return ComplexKind::Koszul;
  if (text == "derham") return ComplexKind::DeRham;
  if (text == "berezinian" || text == "berezinian-complex") return ComplexKind::Berezinian;
  if (text == "specialized-koszul" || text == "specialize") return ComplexKind::SpecializedKoszul;
  throw InvalidInput("unknown complex kind '" + std::string(text) + "'");
}

std::vector<int> GradedComplex::positions() const {
  std::vector<int> out;
  for (int k = window_lo; k <= window_hi; ++k) out.push_back(k);
  return out;
}

bool GradedComplex::known(int k) const {
  if (in_window(k)) return true;
  return (k < window_lo && zero_below) || (k > window_hi && zero_above);
}

long GradedComplex::module_size(int k) const {
  if (in_window(k)) return static_cast<long>(basis_at.at(k).size());
  if (known(k)) return 0;
  throw WindowError("position " + std::to_string(k) + " lies outside the materialized window [" +
                    std::to_string(window_lo) + ", " + std::to_string(window_hi) + "]");
}

std::vector<Parity> GradedComplex::parities(int k) const {
  std::vector<Parity> out;
  if (!in_window(k)) {
    module_size(k);  // throws when unknown
    return out;
  }
  for (const auto& m : basis_at.at(k).entries) out.push_back(m.parity());
  return out;
}

ExactMatrix GradedComplex::outgoing(int k) const {
  if (auto it = diff_at.find(k); it != diff_at.end()) return it->second;
  return ExactMatrix(module_size(k + 1), module_size(k));
}

ExactMatrix GradedComplex::incoming(int k) const { return outgoing(k - 1); }

namespace {

void check_rank(int a, int b, int cap) {
  if (a < 0 || b < 0) throw InvalidInput("rank components must be nonnegative");
  validate(GeneratorSet{a, b});
  if (cap < 0) throw InvalidInput("position cap must be nonnegative");
}

// Target monomial of a contraction term under the coefficient model.
std::optional<SignedMonomial> apply_factor(const Generator& g, const SuperMonomial& rest, CoefficientModel model) {
  if (g.kind == GenKind::X && model == CoefficientModel::LocalCohomology && rest.alpha[g.index] + 1 > -1) {
    return std::nullopt;
  }
  return left_multiply(g, rest);
}

long lookup(const FreeBasis& target, const SuperMonomial& m) {
  long idx = target.index_of(m);
  if (idx < 0) throw ComputationError("image monomial " + to_string(m) + " missing from target basis");
  return idx;
}

}  // namespace

ExactMatrix contraction_matrix(const FreeBasis& source, const FreeBasis& target, CoefficientModel model,
                               Execution exec) {
  ColumnFn column = [&](long col, std::vector<std::pair<long, long>>& out) {
    for (const auto& term : contractions(source.entries[col])) {
      if (auto prod = apply_factor(term.factor, term.rest, model)) {
        out.emplace_back(lookup(target, prod->monomial), term.coeff * prod->sign);
      }
    }
  };
  return assemble(static_cast<long>(target.size()), static_cast<long>(source.size()), column, exec);
}

ExactMatrix derivative_matrix(const FreeBasis& source, const FreeBasis& target, Execution exec) {
  ColumnFn column = [&](long col, std::vector<std::pair<long, long>>& out) {
    for (const auto& [c, m] : derivative_terms(source.entries[col])) out.emplace_back(lookup(target, m), c);
  };
  return assemble(static_cast<long>(target.size()), static_cast<long>(source.size()), column, exec);
}

GradedComplex build_koszul(int a, int b, int n, int cap, Execution exec) {
  check_rank(a, b, cap);
  if (n < 0) throw InvalidInput("Koszul weight must be nonnegative");
  int p_max = b == 0 ? std::min(n, a) : n;
  GradedComplex c;
  c.kind = ComplexKind::Koszul;
  c.a = a;
  c.b = b;
  c.weight = n;
  c.direction = -1;
  c.window_lo = -std::min(cap, p_max);
  c.window_hi = 0;
  c.zero_below = cap >= p_max;
  c.zero_above = true;
  for (int k = c.window_lo; k <= 0; ++k) c.basis_at[k] = basis_lambda_sym(a, b, -k, n + k);
  for (int k = c.window_lo; k < 0; ++k) {
    c.diff_at[k] = contraction_matrix(c.basis_at[k], c.basis_at[k + 1], CoefficientModel::Polynomial, exec);
  }
  return c;
}

GradedComplex build_derham(int a, int b, int n, int cap, Execution exec) {
  check_rank(a, b, cap);
  if (n < 0) throw InvalidInput("De Rham weight must be nonnegative");
  int p_max = b == 0 ? std::min(n, a) : n;
  GradedComplex c;
  c.kind = ComplexKind::DeRham;
  c.a = a;
  c.b = b;
  c.weight = n;
  c.direction = 1;
  c.window_lo = 0;
  c.window_hi = std::min(cap, p_max);
  c.zero_below = true;
  c.zero_above = cap >= p_max;
  for (int k = 0; k <= c.window_hi; ++k) c.basis_at[k] = basis_lambda_sym(a, b, k, n - k);
  for (int k = 0; k < c.window_hi; ++k) c.diff_at[k] = derivative_matrix(c.basis_at[k], c.basis_at[k + 1], exec);
  return c;
}

GradedComplex build_berezinian(int a, int b, int n, int cap, Execution exec) {
  check_rank(a, b, cap);
  // highest position with a nonzero module
  long upper = b == 0 ? a : (a == 0 ? static_cast<long>(b) - n : LONG_MAX);
  GradedComplex c;
  c.kind = ComplexKind::Berezinian;
  c.a = a;
  c.b = b;
  c.weight = n;
  c.direction = 1;
  c.window_lo = 0;
  c.window_hi = static_cast<int>(std::max(0L, std::min<long>(cap, upper)));
  c.zero_below = true;
  c.zero_above = cap >= upper;
  for (int i = 0; i <= c.window_hi; ++i) {
    FreeBasis basis = n + i >= 0 ? basis_lambda_sym(a, b, i, n + i) : FreeBasis{GeneratorSet{a, b}, {}, false};
    basis.dual_forms = true;
    c.basis_at[i] = std::move(basis);
  }
  for (int i = 0; i < c.window_hi; ++i) {
    const FreeBasis& source = c.basis_at[i];
    const FreeBasis& target = c.basis_at[i + 1];
    // φ_v ⊗ s  ↦  φ_v ∘ i_D ⊗ s, expanded over the forms u = v·g of one degree more
    ColumnFn column = [&](long col, std::vector<std::pair<long, long>>& out) {
      const SuperMonomial& m = source.entries[col];
      SuperMonomial v = m;
      std::fill(v.alpha.begin(), v.alpha.end(), 0);
      v.theta = 0;
      SuperMonomial s = m;
      s.dx = 0;
      std::fill(s.beta.begin(), s.beta.end(), 0);
      int f_parity = static_cast<int>(m.parity());
      std::vector<SuperMonomial> lifts;
      for (int k = 0; k < a; ++k) {
        if (v.dx >> k & 1) continue;
        SuperMonomial u = v;
        u.dx |= std::uint32_t{1} << k;
        lifts.push_back(std::move(u));
      }
      for (int j = 0; j < b; ++j) {
        SuperMonomial u = v;
        u.beta[j] += 1;
        lifts.push_back(std::move(u));
      }
      for (const auto& u : lifts) {
        for (const auto& term : contractions(u)) {
          if (!(term.rest == v)) continue;
          auto ws = left_multiply(term.factor, s);
          if (!ws) continue;
          long value = term.coeff * ws->sign;
          if (f_parity == 1 && parity_bit(term.factor.kind) == 1) value = -value;
          SuperMonomial row = ws->monomial;
          row.dx = u.dx;
          row.beta = u.beta;
          out.emplace_back(lookup(target, row), value);
        }
      }
    };
    c.diff_at[i] = assemble(static_cast<long>(target.size()), static_cast<long>(source.size()), column, exec);
  }
  return c;
}

GradedComplex specialize_koszul(int a, int b, const std::vector<long>& omega, int cap, Execution exec) {
  check_rank(a, b, cap);
  if (static_cast<int>(omega.size()) != a + b) {
    throw InvalidInput("omega needs " + std::to_string(a + b) + " entries, got " + std::to_string(omega.size()));
  }
  for (int j = 0; j < b; ++j) {
    if (omega[a + j] != 0) throw InvalidInput("odd slots of omega must be zero over a purely even base");
  }
  int p_max = b == 0 ? a : INT_MAX;
  GradedComplex c;
  c.kind = ComplexKind::SpecializedKoszul;
  c.a = a;
  c.b = b;
  c.omega = omega;
  c.direction = -1;
  c.window_lo = -std::min(cap, p_max);
  c.window_hi = 0;
  c.zero_below = cap >= p_max;
  c.zero_above = true;
  for (int k = c.window_lo; k <= 0; ++k) c.basis_at[k] = basis_lambda_sym(a, b, -k, 0);
  for (int k = c.window_lo; k < 0; ++k) {
    const FreeBasis& source = c.basis_at[k];
    const FreeBasis& target = c.basis_at[k + 1];
    ColumnFn column = [&](long col, std::vector<std::pair<long, long>>& out) {
      // dx_i ↦ ω_i; dθ_j ↦ 0
      for (const auto& term : contractions(source.entries[col])) {
        if (term.factor.kind != GenKind::X || omega[term.factor.index] == 0) continue;
        out.emplace_back(lookup(target, term.rest), term.coeff * omega[term.factor.index]);
      }
    };
    c.diff_at[k] = assemble(static_cast<long>(target.size()), static_cast<long>(source.size()), column, exec);
  }
  return c;
}

GradedComplex build_complex(const ComplexSpec& spec, Execution exec) {
  switch (spec.kind) {
    case ComplexKind::Koszul: return build_koszul(spec.a, spec.b, spec.weight, spec.cap, exec);
    case ComplexKind::DeRham: return build_derham(spec.a, spec.b, spec.weight, spec.cap, exec);
    case ComplexKind::Berezinian: return build_berezinian(spec.a, spec.b, spec.weight, spec.cap, exec);
    case ComplexKind::SpecializedKoszul: return specialize_koszul(spec.a, spec.b, spec.omega, spec.cap, exec);
  }
  throw InvalidInput("unknown complex kind");
}

namespace {

json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw InvalidInput("matrix value must be an integer or a decimal string");
}

}  // namespace

json complex_to_json(const GradedComplex& c) {
  json j;
  j["format"] = "skos-complex";
  j["version"] = 1;
  j["kind"] = to_string(c.kind);
  j["rank"] = {c.a, c.b};
  if (c.kind == ComplexKind::SpecializedKoszul) {
    j["omega"] = c.omega;
  } else {
    j["weight"] = c.weight;
  }
  j["direction"] = c.direction;
  j["window"] = {c.window_lo, c.window_hi};
  j["zero_below"] = c.zero_below;
  j["zero_above"] = c.zero_above;
  json positions = json::array();
  for (const auto& [k, basis] : c.basis_at) {
    json parities = json::array();
    for (const auto& m : basis.entries) parities.push_back(static_cast<int>(m.parity()));
    positions.push_back({{"position", k}, {"basis", basis.labels()}, {"parity", parities}});
  }
  j["positions"] = positions;
  json diffs = json::array();
  for (const auto& [k, m] : c.diff_at) {
    json entries = json::array();
    for (const auto& e : m.entries()) entries.push_back({e.row, e.col, integer_to_json(e.value)});
    diffs.push_back({{"from", k}, {"to", k + 1}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}});
  }
  j["differentials"] = diffs;
  return j;
}

GradedComplex complex_from_json(const json& j) {
  try {
    if (j.at("format") != "skos-complex") throw InvalidInput("not a skos-complex record");
    if (j.at("version") != 1) throw InvalidInput("unsupported skos-complex version");
    GradedComplex c;
    c.kind = parse_complex_kind(j.at("kind").get<std::string>());
    c.a = j.at("rank").at(0).get<int>();
    c.b = j.at("rank").at(1).get<int>();
    check_rank(c.a, c.b, 0);
    if (c.kind == ComplexKind::SpecializedKoszul) {
      c.omega = j.at("omega").get<std::vector<long>>();
    } else {
      c.weight = j.at("weight").get<int>();
    }
    c.direction = j.at("direction").get<int>();
    c.window_lo = j.at("window").at(0).get<int>();
    c.window_hi = j.at("window").at(1).get<int>();
    c.zero_below = j.at("zero_below").get<bool>();
    c.zero_above = j.at("zero_above").get<bool>();
    GeneratorSet gens{c.a, c.b};
    bool dual = c.kind == ComplexKind::Berezinian;
    for (const auto& pos : j.at("positions")) {
      FreeBasis basis{gens, {}, dual};
      for (const auto& label : pos.at("basis")) basis.entries.push_back(parse_monomial(label.get<std::string>(), gens));
      if (!std::is_sorted(basis.entries.begin(), basis.entries.end(), basis_less)) {
        throw InvalidInput("basis entries are not in canonical order");
      }
      c.basis_at[pos.at("position").get<int>()] = std::move(basis);
    }
    for (int k = c.window_lo; k <= c.window_hi; ++k) {
      if (!c.basis_at.count(k)) throw InvalidInput("missing basis at position " + std::to_string(k));
    }
    for (const auto& d : j.at("differentials")) {
      int from = d.at("from").get<int>();
      if (d.at("to").get<int>() != from + 1) throw InvalidInput("differentials must raise the position by one");
      std::vector<MatrixEntry> entries;
      for (const auto& e : d.at("entries")) {
        entries.push_back({e.at(0).get<long>(), e.at(1).get<long>(), integer_from_json(e.at(2))});
      }
      long rows = d.at("rows").get<long>();
      long cols = d.at("cols").get<long>();
      if (rows != c.module_size(from + 1) || cols != c.module_size(from)) {
        throw InvalidInput("differential shape does not match the bases");
      }
      c.diff_at[from] = ExactMatrix::from_triplets(rows, cols, std::move(entries));
    }
    return c;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed complex record: ") + e.what());
  }
}

}  // namespace skos
