#pragma once

// Test-side reference implementations. Deliberately naive and independent of
// the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace brute {

inline std::uint64_t smallest_prime_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

inline std::vector<std::uint64_t> primes_of(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool squarefree(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return true;
}

// Divide out square factors one at a time.
inline std::int64_t sqf(std::int64_t n) {
  const std::int64_t sign = n < 0 ? -1 : 1;
  std::int64_t m = n < 0 ? -n : n;
  for (std::int64_t d = 2; d * d <= m; ++d) {
    while (m % (d * d) == 0) m /= d * d;
  }
  return sign * m;
}

// sqf(a b) for squarefree a, b: the common primes pair up into a square.
inline std::int64_t sqf_mul(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  return (a / g) * (b / g);
}

// Closure of the generators under (d, e) -> sqf(d e), without 1.
inline std::set<std::int64_t> group_of(const std::vector<std::int64_t>& gens) {
  std::set<std::int64_t> g{1};
  for (std::int64_t a : gens) {
    std::set<std::int64_t> next = g;
    for (std::int64_t d : g) next.insert(sqf_mul(d, a));
    g = next;
  }
  g.erase(1);
  return g;
}

inline std::uint64_t radical_of(const std::set<std::int64_t>& g) {
  std::uint64_t r = 1;
  for (std::int64_t d : g) r = std::lcm(r, static_cast<std::uint64_t>(d < 0 ? -d : d));
  return r;
}

// All degree-2^k fields with radical exactly P, as sorted element lists, by
// trying every k-tuple of signed squarefree divisors of P.
inline std::set<std::vector<std::int64_t>> fields_with_radical(std::uint64_t P, int k, bool totally_real) {
  std::vector<std::int64_t> cands;
  for (std::uint64_t d = 1; d <= P; ++d) {
    if (P % d != 0) continue;
    if (d > 1) cands.push_back(static_cast<std::int64_t>(d));
    if (!totally_real) cands.push_back(-static_cast<std::int64_t>(d));
  }
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  const std::size_t target = (std::size_t{1} << k) - 1;
  while (true) {
    std::vector<std::int64_t> gens;
    for (std::size_t i : idx) gens.push_back(cands[i]);
    const auto g = group_of(gens);
    if (g.size() == target && radical_of(g) == P) out.insert(std::vector<std::int64_t>(g.begin(), g.end()));
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == cands.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

inline int residue4(std::int64_t n) { return static_cast<int>(((n % 4) + 4) % 4); }

// Class by the element residues: 0 = (1,1), 1 = (3,1), 2 = (2,1), 3 = (2,3).
inline int mod4_class_of(const std::vector<std::int64_t>& elements) {
  bool even = false, odd_three = false;
  for (std::int64_t d : elements) {
    if (residue4(d) == 2) even = true;
    if (residue4(d) == 3) odd_three = true;
  }
  if (!even) return odd_three ? 1 : 0;
  return odd_three ? 3 : 2;
}

}  // namespace brute
