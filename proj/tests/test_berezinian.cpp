#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "skos/berezinian.hpp"
#include "skos/errors.hpp"

using namespace skos;

namespace {

constexpr int kGens = 2;

GrassmannElement s(long num, long den = 1) { return GrassmannElement::scalar(kGens, Rational(num, den)); }
GrassmannElement t(int i) { return GrassmannElement::generator(kGens, i - 1); }

// θ1θ2; the helper t() numbers generators from 1 as the text form does
GrassmannElement nu() { return t(1) * t(2); }

SuperMatrix make(int p, int q, std::vector<std::vector<GrassmannElement>> rows) {
  SuperMatrix m = SuperMatrix::identity(p, q, kGens);
  m.entries = std::move(rows);
  return m;
}

}  // namespace

TEST_CASE("Grassmann arithmetic") {
  CHECK(t(1) * t(1) == GrassmannElement(kGens));
  CHECK(t(2) * t(1) == -(t(1) * t(2)));
  CHECK((s(1) + nu()).body() == 1);
  CHECK(nu().is_even());
  CHECK(t(1).is_odd());
  CHECK_FALSE((s(1) + t(1)).is_even());
  CHECK(to_string(s(1) - nu()) == "1 - t1*t2");
  CHECK(to_string(s(1)) == "1");
  CHECK_THROWS_AS(GrassmannElement::generator(kGens, 2), InvalidInput);
  CHECK_THROWS_AS(GrassmannElement(32), InvalidInput);
  CHECK_THROWS_AS(GrassmannElement(1) + GrassmannElement(2), InvalidInput);
}

TEST_CASE("unit inversion examples") {
  CHECK(invert_unit(s(1) + nu()) == s(1) - nu());
  CHECK(invert_unit(s(2)) == s(1, 2));
  GrassmannElement u = s(3) + nu();
  CHECK(invert_unit(u) == s(1, 3) - nu().scaled(Rational(1, 9)));
  CHECK(u * invert_unit(u) == s(1));
  CHECK_THROWS_AS(invert_unit(nu()), ComputationError);
}

TEST_CASE("inverse of random units") {
  std::mt19937_64 rng(31);
  const int gens = 4;
  for (int trial = 0; trial < 100; ++trial) {
    GrassmannElement u = GrassmannElement::scalar(gens, Rational(1 + static_cast<long>(rng() % 5)));
    for (std::uint32_t subset = 1; subset < 16; ++subset) {
      if (__builtin_popcount(subset) % 2 == 0 && rng() % 2) u.add_term(subset, Rational(static_cast<long>(rng() % 7) - 3));
    }
    CHECK(u * invert_unit(u) == GrassmannElement::scalar(gens, Rational(1)));
  }
}

TEST_CASE("even determinants") {
  GrassmannMatrix diag{{s(2), s(0)}, {s(0), s(5)}};
  CHECK(det_even(diag, kGens) == s(10));
  CHECK(det_even(SuperMatrix::identity(3, 0, kGens).entries, kGens) == s(1));
  GrassmannMatrix m{{s(1) + nu(), nu()}, {nu(), s(1)}};
  CHECK(det_even(m, kGens) == s(1) + nu());
}

TEST_CASE("invertibility") {
  CHECK(is_invertible(SuperMatrix::identity(2, 1, kGens)));
  CHECK_FALSE(is_invertible(make(1, 1, {{s(0), t(1)}, {t(2), s(1)}})));
  CHECK(is_invertible(make(1, 0, {{s(1) + nu()}})));
}

TEST_CASE("Berezinian examples") {
  CHECK(ber(SuperMatrix::identity(2, 2, kGens)) == s(1));
  CHECK(ber(make(1, 1, {{s(1) + nu(), t(1)}, {t(2), s(1)}})) == s(1));
  CHECK(ber(make(1, 1, {{s(6), GrassmannElement(kGens)}, {GrassmannElement(kGens), s(2)}})) == s(3));
  auto [first, second] = ber_forms(make(1, 1, {{s(2), t(1)}, {t(2), s(3)}}));
  CHECK(first == second);
  // Ber(X Y; Z T) = det(X - Y T^-1 Z) det(T)^-1 = (2 - θ1θ2/3)/3
  CHECK(first == s(2, 3) - nu().scaled(Rational(1, 9)));
  CHECK_THROWS_AS(ber(make(1, 1, {{s(0), t(1)}, {t(2), s(1)}})), InvalidInput);
  CHECK_THROWS_AS(ber(make(1, 1, {{t(1), t(1)}, {t(2), s(1)}})), InvalidInput);
}

TEST_CASE("Berezinian of random matrices") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    int p = static_cast<int>(rng() % 3), q = static_cast<int>(rng() % 3), gens = static_cast<int>(rng() % 5);
    SuperMatrix m = random_invertible_supermatrix(rng, p, q, gens);
    SuperMatrix n = random_invertible_supermatrix(rng, p, q, gens);
    CHECK(m.is_even());
    CHECK(is_invertible(m));
    CHECK(ber(m * n) == ber(m) * ber(n));
    CHECK(ber(m).is_even());
    CHECK(ber(m).body() != 0);
  }
}

TEST_CASE("module rank") {
  CHECK(berezinian_module_rank(2, 0) == std::pair<SuperDim, int>{SuperDim{1, 0}, 2});
  CHECK(berezinian_module_rank(1, 1) == std::pair<SuperDim, int>{SuperDim{0, 1}, 1});
  CHECK(berezinian_module_rank(0, 0) == std::pair<SuperDim, int>{SuperDim{1, 0}, 0});
}

TEST_CASE("supermatrix records") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    SuperMatrix m = random_invertible_supermatrix(rng, 1 + trial % 2, trial % 3, 3);
    CHECK(supermatrix_from_json(supermatrix_to_json(m)) == m);
  }
  GrassmannElement e = s(1, 2) - nu();
  CHECK(grassmann_from_json(grassmann_to_json(e), kGens) == e);
  nlohmann::json bad = {{"p", 1}, {"q", 0}, {"grassmann_gens", 1}, {"entries", {{{{"coeff", "1"}, {"thetas", {2}}}}}}};
  CHECK_THROWS_AS(supermatrix_from_json(bad), InvalidInput);
}
