#pragma once

// Graded pieces Λ^p L ⊗ S^q L of a free supermodule L = A^{a|b} and their
// parity-split ranks.

#include <compare>
#include <functional>
#include <string>
#include <vector>

#include "skos/super_poly.hpp"

namespace skos {

struct SuperDim {
  long long even = 0;
  long long odd = 0;

  long long total() const { return even + odd; }
  SuperDim& operator+=(const SuperDim& o) {
    even += o.even;
    odd += o.odd;
    return *this;
  }
  friend SuperDim operator+(SuperDim a, const SuperDim& b) { return a += b; }
  friend auto operator<=>(const SuperDim&, const SuperDim&) = default;
  // parity swap
  SuperDim flipped() const { return {odd, even}; }
};

std::string to_string(const SuperDim& d);

// Binomial coefficient with the conventions C(a, 0) = 1 for every a and
// C(a, k) = 0 when a < k; negative k gives 0.
long long binomial(long long a, long long k);

struct FreeBasis {
  GeneratorSet gens;
  std::vector<SuperMonomial> entries;
  bool dual_forms = false;  // entries of the form dx, dθ stand for dual basis vectors

  std::size_t size() const { return entries.size(); }
  SuperDim dim() const;
  std::vector<std::string> labels() const;
  // -1 when absent
  long index_of(const SuperMonomial& m) const;
};

// All x^α θ^S dx^E dθ^β with |E| + |β| = p and |α| + |S| = q over a even and
// b odd generators, sorted by basis_less.
FreeBasis basis_lambda_sym(int a, int b, int p, int q);

// Parity-split rank of Λ^p of A^{m+1|n}.
SuperDim rank_lambda(int p, int m, int n);

// Parity-split count of x^α θ^S with |α| + |S| = k over a even and b odd generators.
SuperDim rank_sym(int k, int a, int b);

// Visits every exponent vector of length `slots` with entries >= 0 summing to
// `total`, in lexicographic order.
void for_each_composition(int slots, int total, const std::function<void(const std::vector<int>&)>& visit);

// Visits every subset of {0..n-1} of size k, as bitmasks in increasing order.
void for_each_subset(int n, int k, const std::function<void(std::uint32_t)>& visit);

}  // namespace skos
