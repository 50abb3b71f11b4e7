#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skos/complexes.hpp"
#include "skos/errors.hpp"
#include "skos/exact_linalg.hpp"
#include "skos/super_poly.hpp"

using namespace skos;

namespace {

ExactMatrix dense(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Integer>> v;
  for (const auto& r : rows) {
    std::vector<Integer> row;
    for (long x : r) row.emplace_back(x);
    v.push_back(row);
  }
  return ExactMatrix::from_dense(v, rows.empty() ? 0 : static_cast<long>(rows[0].size()));
}

std::vector<std::string> labels_at(const GradedComplex& c, int k) { return c.basis_at.at(k).labels(); }

// Column j of a differential computed through the polynomial operators.
void check_against_operators(const GradedComplex& c, bool koszul) {
  for (const auto& [k, m] : c.diff_at) {
    const FreeBasis& src = c.basis_at.at(k);
    const FreeBasis& dst = c.basis_at.at(k + 1);
    for (std::size_t j = 0; j < src.size(); ++j) {
      auto f = SuperPolynomial<Integer>::monomial(src.entries[j], Integer(1));
      auto image = koszul ? apply_i_D(f) : apply_d(f);
      for (std::size_t i = 0; i < dst.size(); ++i) {
        auto it = image.terms().find(dst.entries[i]);
        Integer expected = it == image.terms().end() ? Integer(0) : it->second;
        CHECK(m.at(static_cast<long>(i), static_cast<long>(j)) == expected);
      }
    }
  }
}

}  // namespace

TEST_CASE("Koszul examples") {
  for (int n = 1; n <= 4; ++n) {
    GradedComplex c = build_koszul(1, 0, n, 6);
    CHECK(c.window_lo == -1);
    CHECK(c.window_hi == 0);
    CHECK(c.outgoing(-1) == dense({{1}}));
  }
  GradedComplex odd = build_koszul(0, 1, 3, 3);
  CHECK(labels_at(odd, -3) == std::vector<std::string>{"dt1^3"});
  CHECK(labels_at(odd, -2) == std::vector<std::string>{"t1*dt1^2"});
  CHECK(odd.outgoing(-3) == dense({{3}}));
  CHECK(odd.module_size(-1) == 0);

  GradedComplex w0 = build_koszul(2, 1, 0, 6);
  CHECK(w0.window_lo == 0);
  CHECK(w0.window_hi == 0);
  CHECK(labels_at(w0, 0) == std::vector<std::string>{"1"});
  CHECK(w0.diff_at.empty());
}

TEST_CASE("De Rham examples") {
  for (int n = 1; n <= 4; ++n) {
    GradedComplex c = build_derham(1, 0, n, 6);
    CHECK(c.outgoing(0) == dense({{n}}));
  }
  CHECK(build_derham(3, 2, 0, 6).positions() == std::vector<int>{0});
  GradedComplex odd = build_derham(0, 1, 2, 4);
  CHECK(odd.module_size(0) == 0);
  CHECK(labels_at(odd, 1) == std::vector<std::string>{"t1*dt1"});
  CHECK(labels_at(odd, 2) == std::vector<std::string>{"dt1^2"});
  CHECK(odd.outgoing(1) == dense({{1}}));
}

TEST_CASE("Berezinian examples") {
  for (int n = 0; n <= 3; ++n) {
    GradedComplex c = build_berezinian(1, 0, n, 1);
    CHECK(c.module_size(0) == 1);
    CHECK(c.module_size(1) == 1);
    CHECK(c.outgoing(0) == dense({{1}}));
  }
  GradedComplex single = build_berezinian(2, 1, 1, 0);
  CHECK(single.positions() == std::vector<int>{0});
  CHECK(single.diff_at.empty());
  // the odd line: weight -i carries B -> B, multiplication by (i+1)θ up to sign
  for (int i = 0; i <= 4; ++i) {
    GradedComplex c = build_berezinian(0, 1, -i, 6);
    CHECK(c.window_hi == i + 1);
    CHECK(c.zero_above);
    ExactMatrix m = c.outgoing(i);
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols() == 1);
    CHECK(abs(m.at(0, 0)) == i + 1);
    for (int k = 0; k < i; ++k) CHECK(c.module_size(k) == 0);
  }
}

TEST_CASE("specialized Koszul example") {
  GradedComplex c = specialize_koszul(2, 0, {2, 3}, 6);
  CHECK(c.window_lo == -2);
  CHECK(c.outgoing(-2) == dense({{-3}, {2}}));
  CHECK(c.outgoing(-1) == dense({{2, 3}}));
  for (const auto& h : homology_all(c, Base::integers())) CHECK(h.is_zero());
  CHECK_THROWS_AS(specialize_koszul(1, 1, {1, 1}, 6), InvalidInput);
  CHECK_THROWS_AS(specialize_koszul(2, 0, {1}, 6), InvalidInput);
}

TEST_CASE("differentials match the polynomial operators") {
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      for (int n = 0; n <= 4; ++n) {
        check_against_operators(build_koszul(a, b, n, 6), true);
        check_against_operators(build_derham(a, b, n, 6), false);
      }
    }
  }
}

TEST_CASE("serial and parallel builds agree") {
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 2; ++b) {
      for (int n = -2; n <= 4; ++n) {
        if (n >= 0) {
          auto ks = build_koszul(a, b, n, 6, Execution::Serial);
          auto kp = build_koszul(a, b, n, 6, Execution::Parallel);
          CHECK(ks.diff_at == kp.diff_at);
          auto ds = build_derham(a, b, n, 6, Execution::Serial);
          auto dp = build_derham(a, b, n, 6, Execution::Parallel);
          CHECK(ds.diff_at == dp.diff_at);
        }
        auto bs = build_berezinian(a, b, n, 5, Execution::Serial);
        auto bp = build_berezinian(a, b, n, 5, Execution::Parallel);
        CHECK(bs.diff_at == bp.diff_at);
      }
    }
  }
}

TEST_CASE("parity blocks are respected") {
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      for (int n = 0; n <= 4; ++n) {
        for (const auto& c : {build_koszul(a, b, n, 6), build_derham(a, b, n, 6), build_berezinian(a, b, n - 2, 5)}) {
          for (const auto& [k, m] : c.diff_at) {
            auto src = c.parities(k);
            auto dst = c.parities(k + 1);
            for (const auto& e : m.entries()) CHECK(src[e.col] == dst[e.row]);
          }
        }
      }
    }
  }
}

TEST_CASE("windows and caps") {
  GradedComplex c = build_koszul(0, 2, 6, 3);
  CHECK(c.window_lo == -3);
  CHECK_FALSE(c.zero_below);
  CHECK(c.zero_above);
  CHECK_THROWS_AS(c.module_size(-4), WindowError);
  CHECK(c.module_size(1) == 0);
  GradedComplex even = build_koszul(2, 0, 5, 6);
  CHECK(even.window_lo == -2);
  CHECK(even.zero_below);
  CHECK_THROWS_AS(build_koszul(1, 1, -1, 6), InvalidInput);
  CHECK_THROWS_AS(build_koszul(1, 1, 2, -1), InvalidInput);
  CHECK(build_berezinian(1, 0, -3, 6).module_size(1) == 0);
}

TEST_CASE("complex record round trip") {
  for (const auto& c : {build_koszul(2, 1, 3, 6), build_derham(1, 2, 3, 6), build_berezinian(1, 1, 0, 4),
                        specialize_koszul(2, 0, {2, 3}, 6)}) {
    auto j = complex_to_json(c);
    CHECK(j.at("format") == "skos-complex");
    CHECK(j.at("version") == 1);
    GradedComplex back = complex_from_json(j);
    CHECK(back.kind == c.kind);
    CHECK(back.window_lo == c.window_lo);
    CHECK(back.window_hi == c.window_hi);
    CHECK(back.zero_below == c.zero_below);
    CHECK(back.zero_above == c.zero_above);
    CHECK(back.diff_at == c.diff_at);
    for (const auto& [k, basis] : c.basis_at) CHECK(back.basis_at.at(k).labels() == basis.labels());
    CHECK(complex_to_json(back) == j);
  }
}

TEST_CASE("malformed complex records") {
  auto j = complex_to_json(build_koszul(1, 1, 2, 6));
  auto bad_format = j;
  bad_format["format"] = "other";
  CHECK_THROWS_AS(complex_from_json(bad_format), InvalidInput);
  auto bad_version = j;
  bad_version["version"] = 2;
  CHECK_THROWS_AS(complex_from_json(bad_version), InvalidInput);
  auto bad_shape = j;
  bad_shape["differentials"][0]["rows"] = 99;
  CHECK_THROWS_AS(complex_from_json(bad_shape), InvalidInput);
  CHECK_THROWS_AS(complex_from_json(nlohmann::json::array()), InvalidInput);
}

TEST_CASE("complex kinds parse") {
  CHECK(parse_complex_kind("koszul") == ComplexKind::Koszul);
  CHECK(parse_complex_kind("derham") == ComplexKind::DeRham);
  CHECK(parse_complex_kind("berezinian") == ComplexKind::Berezinian);
  CHECK(parse_complex_kind("specialized-koszul") == ComplexKind::SpecializedKoszul);
  CHECK_THROWS_AS(parse_complex_kind("cech"), InvalidInput);
}
