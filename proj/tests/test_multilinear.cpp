#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "skos/errors.hpp"
#include "skos/multilinear.hpp"
#include "skos/super_poly.hpp"

using namespace skos;

namespace {

// Every canonical monomial with exterior degree p and symmetric degree q,
// found by normalizing all words of bounded length.
std::set<SuperMonomial> enumerate(int a, int b, int p, int q) {
  GeneratorSet gens{a, b};
  std::set<SuperMonomial> out;
  std::vector<Generator> letters;
  for (int i = 0; i < a; ++i) {
    letters.push_back({GenKind::X, i, 1});
    letters.push_back({GenKind::DX, i, 1});
  }
  for (int j = 0; j < b; ++j) {
    letters.push_back({GenKind::Theta, j, 1});
    letters.push_back({GenKind::DTheta, j, 1});
  }
  std::function<void(Word&)> grow = [&](Word& w) {
    int ext = 0, sym = 0;
    for (const auto& g : w) (exterior_degree(g.kind) ? ext : sym) += 1;
    if (ext == p && sym == q) {
      if (auto sm = normalize_word(gens, w)) out.insert(sm->monomial);
      return;
    }
    for (const auto& g : letters) {
      int e = exterior_degree(g.kind);
      if (e ? ext >= p : sym >= q) continue;
      w.push_back(g);
      grow(w);
      w.pop_back();
    }
  };
  Word w;
  grow(w);
  return out;
}

// Λ^p and S^q of A^{a|b}: j odd factors, parity j.
SuperDim lambda_by_binomials(int p, int a, int b) {
  SuperDim d;
  for (int j = 0; j <= p; ++j) {
    long long c = binomial(a, p - j) * (j == 0 ? 1 : binomial(b + j - 1, j));
    (j % 2 ? d.odd : d.even) += c;
  }
  return d;
}

SuperDim sym_by_binomials(int q, int a, int b) {
  SuperDim d;
  for (int j = 0; j <= q; ++j) {
    long long c = (q - j == 0 ? 1 : binomial(a + q - j - 1, q - j)) * binomial(b, j);
    (j % 2 ? d.odd : d.even) += c;
  }
  return d;
}

}  // namespace

TEST_CASE("binomial conventions") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 0) == 1);
  CHECK(binomial(-2, 0) == 1);
  CHECK(binomial(2, 3) == 0);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(-2, 2) == 0);
}

TEST_CASE("super dimensions") {
  SuperDim d{3, 2};
  CHECK(d.total() == 5);
  CHECK(d.flipped() == SuperDim{2, 3});
  CHECK(to_string(d) == "(3|2)");
  d += SuperDim{1, 1};
  CHECK(d == SuperDim{4, 3});
}

TEST_CASE("basis examples") {
  FreeBasis b = basis_lambda_sym(2, 1, 2, 0);
  CHECK(b.dim() == SuperDim{2, 2});
  auto names = b.labels();
  std::set<std::string> labels(names.begin(), names.end());
  CHECK(labels == std::set<std::string>{"dx0*dx1", "dt1^2", "dx0*dt1", "dx1*dt1"});
  CHECK(basis_lambda_sym(3, 2, 0, 0).labels() == std::vector<std::string>{"1"});
  CHECK(basis_lambda_sym(1, 0, 2, 0).size() == 0);
}

TEST_CASE("rank examples") {
  CHECK(rank_lambda(2, 1, 1) == SuperDim{2, 2});
  CHECK(rank_lambda(0, 4, 3) == SuperDim{1, 0});
  CHECK(rank_lambda(3, 1, 0) == SuperDim{0, 0});
  for (int m = 0; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      for (int p = 0; p <= 4; ++p) CHECK(rank_lambda(p, m, n) == basis_lambda_sym(m + 1, n, p, 0).dim());
    }
  }
  CHECK(rank_sym(2, 2, 1) == SuperDim{3, 2});
  CHECK(rank_sym(0, 2, 2) == SuperDim{1, 0});
  CHECK(rank_sym(3, 0, 2) == SuperDim{0, 0});
}

TEST_CASE("bases match word enumeration") {
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      for (int p = 0; p <= 3; ++p) {
        for (int q = 0; q <= 3 - p; ++q) {
          FreeBasis basis = basis_lambda_sym(a, b, p, q);
          std::set<SuperMonomial> got(basis.entries.begin(), basis.entries.end());
          CHECK(got.size() == basis.size());
          CHECK(got == enumerate(a, b, p, q));
          CHECK(std::is_sorted(basis.entries.begin(), basis.entries.end(), basis_less));
          for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis.index_of(basis.entries[i]) == static_cast<long>(i));
          // Λ^p ⊗ S^q splits as a sum over how the degrees distribute
          SuperDim expected;
          SuperDim lam = lambda_by_binomials(p, a, b), sym = sym_by_binomials(q, a, b);
          expected.even = lam.even * sym.even + lam.odd * sym.odd;
          expected.odd = lam.even * sym.odd + lam.odd * sym.even;
          CHECK(basis.dim() == expected);
        }
      }
    }
  }
}

TEST_CASE("enumeration helpers") {
  int count = 0;
  for_each_composition(3, 2, [&](const std::vector<int>& c) {
    CHECK(c.size() == 3);
    CHECK(c[0] + c[1] + c[2] == 2);
    ++count;
  });
  CHECK(count == 6);
  count = 0;
  for_each_subset(5, 2, [&](std::uint32_t s) {
    CHECK(__builtin_popcount(s) == 2);
    ++count;
  });
  CHECK(count == 10);
}

TEST_CASE("invalid ranks") {
  CHECK_THROWS_AS(basis_lambda_sym(-1, 0, 0, 0), InvalidInput);
}
