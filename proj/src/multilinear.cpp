#include "skos/multilinear.hpp"

#include <algorithm>
#include <bit>

namespace skos {

std::string to_string(const SuperDim& d) {
  return "(" + std::to_string(d.even) + "|" + std::to_string(d.odd) + ")";
}

long long binomial(long long a, long long k) {
  if (k == 0) return 1;
  if (k < 0 || a < k) return 0;
  k = std::min(k, a - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (a - k + i) / i;
  return r;
}

SuperDim FreeBasis::dim() const {
  SuperDim d;
  for (const auto& m : entries) (m.parity() == Parity::Even ? d.even : d.odd) += 1;
  return d;
}

std::vector<std::string> FreeBasis::labels() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& m : entries) out.push_back(to_string(m, dual_forms));
  return out;
}

long FreeBasis::index_of(const SuperMonomial& m) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), m, basis_less);
  if (it == entries.end() || !(*it == m)) return -1;
  return static_cast<long>(it - entries.begin());
}

void for_each_composition(int slots, int total, const std::function<void(const std::vector<int>&)>& visit) {
  if (total < 0) return;
  std::vector<int> v(slots, 0);
  if (slots == 0) {
    if (total == 0) visit(v);
    return;
  }
  // lexicographic: first slot from 0 upwards
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == slots - 1) {
      v[i] = left;
      visit(v);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      v[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, total);
}

void for_each_subset(int n, int k, const std::function<void(std::uint32_t)>& visit) {
  if (k < 0 || k > n) return;
  std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) {
    if (std::popcount(s) == k) visit(static_cast<std::uint32_t>(s));
  }
}

FreeBasis basis_lambda_sym(int a, int b, int p, int q) {
  if (a < 0 || b < 0) throw InvalidInput("rank components must be nonnegative");
  GeneratorSet gens{a, b};
  validate(gens);
  FreeBasis basis{gens, {}, false};
  if (p < 0 || q < 0) return basis;
  for (int e = 0; e <= std::min(p, a); ++e) {
    for_each_subset(a, e, [&](std::uint32_t dx) {
      for_each_composition(b, p - e, [&](const std::vector<int>& beta) {
        for (int s = 0; s <= std::min(q, b); ++s) {
          for_each_subset(b, s, [&](std::uint32_t theta) {
            for_each_composition(a, q - s, [&](const std::vector<int>& alpha) {
              basis.entries.push_back(SuperMonomial{alpha, theta, dx, beta});
            });
          });
        }
      });
    });
  }
  std::sort(basis.entries.begin(), basis.entries.end(), basis_less);
  return basis;
}

SuperDim rank_lambda(int p, int m, int n) {
  SuperDim d;
  if (p < 0) return d;
  for (int i = 0; i <= p; ++i) {
    long long c = binomial(m + 1, p - i) * binomial(n + i - 1, i);
    (i % 2 == 0 ? d.even : d.odd) += c;
  }
  return d;
}

SuperDim rank_sym(int k, int a, int b) {
  SuperDim d;
  if (k < 0) return d;
  for (int i = 0; i <= std::min(k, b); ++i) {
    // x-part of degree k - i over a even generators
    long long xs = a == 0 ? (k - i == 0 ? 1 : 0) : binomial(a + (k - i) - 1, a - 1);
    long long c = xs * binomial(b, i);
    (i % 2 == 0 ? d.even : d.odd) += c;
  }
  return d;
}

}  // namespace skos
