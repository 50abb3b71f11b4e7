#include "skos/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "skos/berezinian.hpp"
#include "skos/bott.hpp"
#include "skos/complexes.hpp"
#include "skos/errors.hpp"
#include "skos/exact_linalg.hpp"

namespace skos::cli {

using nlohmann::json;

namespace {

std::pair<int, int> parse_rank(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidInput("rank must look like a,b");
  try {
    std::size_t used_a = 0, used_b = 0;
    int a = std::stoi(text.substr(0, comma), &used_a);
    int b = std::stoi(text.substr(comma + 1), &used_b);
    if (used_a != comma || used_b != text.size() - comma - 1) throw InvalidInput("rank must look like a,b");
    if (a < 0 || b < 0) throw InvalidInput("rank components must be nonnegative");
    return {a, b};
  } catch (const std::logic_error&) {
    throw InvalidInput("rank must look like a,b");
  }
}

std::vector<long> parse_omega(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Integer v = parse_integer(item);
    if (!v.fits_slong_p()) throw InvalidInput("omega entry out of range");
    out.push_back(v.get_si());
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

void print_complex(const GradedComplex& c, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << complex_to_json(c).dump(2) << "\n";
    return;
  }
  out << to_string(c.kind) << " rank (" << c.a << "|" << c.b << ")";
  if (c.kind == ComplexKind::SpecializedKoszul) {
    out << " omega";
    for (long w : c.omega) out << " " << w;
  } else {
    out << " weight " << c.weight;
  }
  out << " window [" << c.window_lo << ", " << c.window_hi << "]\n";
  for (const auto& [k, basis] : c.basis_at) {
    out << "position " << k << ": " << to_string(basis.dim()) << " [";
    auto labels = basis.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? ", " : "") << labels[i];
    out << "]\n";
  }
  for (const auto& [k, m] : c.diff_at) {
    out << "d " << k << " -> " << k + 1 << " (" << m.rows() << "x" << m.cols() << "):";
    for (const auto& e : m.entries()) out << " (" << e.row << "," << e.col << "," << e.value.get_str() << ")";
    out << "\n";
  }
}

void print_tables(const std::vector<CohomologyTable>& tables, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    out << tables_csv(tables);
  } else if (format == "json") {
    json arr = json::array();
    for (const auto& t : tables) arr.push_back(to_json(t));
    out << json{{"tables", arr}}.dump(2) << "\n";
  } else {
    for (const auto& t : tables) {
      out << "m=" << t.m << " n=" << t.n << " p=" << t.p << " r=" << t.r << " method=" << t.method << ":";
      for (std::size_t i = 0; i < t.rows.size(); ++i) out << " H^" << i << " " << to_string(t.rows[i]);
      out << "\n";
    }
  }
}

struct ComplexOptions {
  std::string rank = "0,0";
  int weight = 0;
  int cap = 6;
  std::string omega;

  void attach(CLI::App* cmd, bool with_weight, bool with_omega) {
    cmd->add_option("--rank", rank, "rank a,b of the free module A^{a|b}")->required();
    if (with_weight) cmd->add_option("--weight", weight, "weight n of the component");
    if (with_omega) cmd->add_option("--omega", omega, "comma-separated values of the linear form");
    cmd->add_option("--cap", cap, "largest |position| materialized")->check(CLI::NonNegativeNumber);
  }

  ComplexSpec spec(ComplexKind kind) const {
    auto [a, b] = parse_rank(rank);
    ComplexSpec s{kind, a, b, weight, cap, {}};
    if (kind == ComplexKind::SpecializedKoszul) s.omega = parse_omega(omega);
    return s;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"skos: super Koszul, De Rham and Berezinian complexes, homology and super Bott tables", "skos"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--output", format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  ComplexOptions kos_opts, dr_opts, ber_opts, spec_opts, hom_opts;
  auto* kos = app.add_subcommand("koszul", "weight component of the Koszul complex");
  kos_opts.attach(kos, true, false);
  auto* dr = app.add_subcommand("derham", "weight component of the De Rham complex");
  dr_opts.attach(dr, true, false);
  auto* berc = app.add_subcommand("berezinian-complex", "weight component of the Berezinian complex");
  ber_opts.attach(berc, true, false);
  auto* spec = app.add_subcommand("specialize", "Koszul complex of a linear form omega");
  spec_opts.attach(spec, false, true);

  auto* hom = app.add_subcommand("homology", "homology of a complex");
  hom_opts.attach(hom, true, true);
  hom->get_option("--rank")->required(false);
  std::string hom_kind = "koszul";
  std::string base_text = "Q";
  std::optional<int> position;
  std::string complex_input;
  hom->add_option("--kind", hom_kind, "koszul, derham, berezinian or specialized-koszul");
  hom->add_option("--base", base_text, "Z, Q or Fp:<prime>");
  hom->add_option("--position", position, "single position (default: every position)");
  hom->add_option("--input", complex_input, "complex record produced with --output json");

  auto* berd = app.add_subcommand("ber", "Berezin determinant of a supermatrix");
  std::string matrix_input;
  bool random = false;
  std::uint64_t seed = 0;
  int rp = 1, rq = 1, rgens = 2;
  berd->add_option("--input", matrix_input, "supermatrix record");
  berd->add_flag("--random", random, "use a seeded random invertible supermatrix");
  berd->add_option("--seed", seed, "seed for --random");
  berd->add_option("--p", rp, "even block size for --random")->check(CLI::NonNegativeNumber);
  berd->add_option("--q", rq, "odd block size for --random")->check(CLI::NonNegativeNumber);
  berd->add_option("--gens", rgens, "Grassmann generators for --random")->check(CLI::Range(0, 31));

  auto* bott = app.add_subcommand("bott", "cohomology of twisted forms on P^{m|n}");
  int bm = 1, bn = 0;
  std::optional<int> bp, bp_max, br, br_min, br_max;
  std::string method_text = "formula";
  std::string bott_base = "Q";
  bott->add_option("--m", bm, "even dimension m")->check(CLI::NonNegativeNumber);
  bott->add_option("--n", bn, "odd dimension n")->check(CLI::NonNegativeNumber);
  auto* opt_p = bott->add_option("--p", bp, "form degree");
  auto* opt_pmax = bott->add_option("--p-max", bp_max, "all form degrees 0..p-max");
  opt_p->excludes(opt_pmax);
  auto* opt_r = bott->add_option("--r", br, "twist");
  opt_r->excludes(bott->add_option("--r-min", br_min, "lowest twist"));
  opt_r->excludes(bott->add_option("--r-max", br_max, "highest twist"));
  bott->add_option("--method", method_text, "formula, direct or both");
  bott->add_option("--base", bott_base, "Q or Fp:<prime> for the direct method");

  auto* line = app.add_subcommand("line-bundle", "cohomology of O(r) on P^{m|n}");
  int lm = 1, ln = 0;
  std::optional<int> lr, lr_min, lr_max;
  line->add_option("--m", lm, "even dimension m")->check(CLI::NonNegativeNumber);
  line->add_option("--n", ln, "odd dimension n")->check(CLI::NonNegativeNumber);
  auto* opt_lr = line->add_option("--r", lr, "twist");
  opt_lr->excludes(line->add_option("--r-min", lr_min, "lowest twist"));
  opt_lr->excludes(line->add_option("--r-max", lr_max, "highest twist"));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "skos: " << e.what() << "\n";
    return 2;
  }

  try {
    if (kos->parsed() || dr->parsed() || berc->parsed() || spec->parsed()) {
      if (format == "csv") throw InvalidInput("csv output is only available for tables");
      GradedComplex c;
      if (kos->parsed()) c = build_complex(kos_opts.spec(ComplexKind::Koszul));
      if (dr->parsed()) c = build_complex(dr_opts.spec(ComplexKind::DeRham));
      if (berc->parsed()) c = build_complex(ber_opts.spec(ComplexKind::Berezinian));
      if (spec->parsed()) c = build_complex(spec_opts.spec(ComplexKind::SpecializedKoszul));
      print_complex(c, format, out);
    } else if (hom->parsed()) {
      if (format == "csv") throw InvalidInput("csv output is only available for tables");
      Base base = Base::parse(base_text);
      GradedComplex c = complex_input.empty() ? build_complex(hom_opts.spec(parse_complex_kind(hom_kind)))
                                              : complex_from_json(read_json_file(complex_input));
      std::vector<HomologySummary> hs;
      if (position) {
        hs.push_back(homology(c, base, *position));
      } else {
        hs = homology_all(c, base);
      }
      if (format == "json") {
        json arr = json::array();
        for (const auto& h : hs) arr.push_back(to_json(h));
        out << json{{"base", base.name()}, {"homology", arr}}.dump(2) << "\n";
      } else {
        for (const auto& h : hs) out << to_text(h) << "\n";
      }
    } else if (berd->parsed()) {
      if (format == "csv") throw InvalidInput("csv output is only available for tables");
      if (random == !matrix_input.empty()) throw InvalidInput("ber needs exactly one of --input or --random");
      SuperMatrix m;
      if (random) {
        std::mt19937_64 rng(seed);
        m = random_invertible_supermatrix(rng, rp, rq, rgens);
      } else {
        m = supermatrix_from_json(read_json_file(matrix_input));
      }
      GrassmannElement b = ber(m);
      if (format == "json") {
        json j{{"ber", grassmann_to_json(b)}, {"text", to_string(b)}};
        if (random) j["matrix"] = supermatrix_to_json(m);
        out << j.dump(2) << "\n";
      } else {
        out << to_string(b) << "\n";
      }
    } else if (bott->parsed()) {
      if (!bp && !bp_max) throw InvalidInput("bott needs --p or --p-max");
      if (!br && !(br_min && br_max)) throw InvalidInput("bott needs --r or both --r-min and --r-max");
      BottMethod method = parse_bott_method(method_text);
      Base base = Base::parse(bott_base);
      std::vector<CohomologyTable> tables;
      int r_lo = br ? *br : *br_min;
      int r_hi = br ? *br : *br_max;
      if (bp) {
        if (*bp < 0) throw InvalidInput("form degree p must be nonnegative");
        // a single p: the p-major sweep restricted to one degree
        for (const auto& t : bott_table(bm, bn, *bp, r_lo, r_hi, method, base)) {
          if (t.p == *bp) tables.push_back(t);
        }
      } else {
        tables = bott_table(bm, bn, *bp_max, r_lo, r_hi, method, base);
      }
      print_tables(tables, format, out);
    } else if (line->parsed()) {
      if (!lr && !(lr_min && lr_max)) throw InvalidInput("line-bundle needs --r or both --r-min and --r-max");
      int r_lo = lr ? *lr : *lr_min;
      int r_hi = lr ? *lr : *lr_max;
      std::vector<CohomologyTable> tables;
      for (int r = r_lo; r <= r_hi; ++r) tables.push_back(cohomology_line_bundle(lm, ln, r));
      print_tables(tables, format, out);
    }
  } catch (const ComputationError& e) {
    err << "skos: computation error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidInput& e) {
    err << "skos: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace skos::cli
