#pragma once

// Exact N_k(x) and N_k^+(x): sums of the radical-counting formulas over odd
// squarefree P under four class-dependent radical bounds.

#include <array>
#include <cstdint>

#include <gmpxx.h>

#include "multiquad/arith.hpp"
#include "multiquad/countform.hpp"

namespace multiquad {

// A_M(x) = sum over odd squarefree n <= x of M^omega(n).
mpz_class sum_A(std::int64_t M, std::uint64_t x, const SieveOptions& opts = {});

// A_{M,N}(x) = sum over odd squarefree n <= x of M^omega1(n) N^omega3(n).
mpz_class sum_A_bivariate(std::int64_t M, std::int64_t N, std::uint64_t x, const SieveOptions& opts = {});

// Exact sum of eval_count(family, P) over streamed profiles. Terms are
// accumulated as integer power sums and combined with the rational
// coefficients once at the end.
class FamilySum {
 public:
  explicit FamilySum(const CountFamily& family);

  void add(int omega1, int omega3);
  void merge(const FamilySum& other);
  mpz_class total() const;

 private:
  struct Slot {
    mpq_class coef;
    std::vector<i128> pow3;  // base3^e, e = 0, 1, ...
    std::vector<i128> pow1;
    i128 sum = 0;
    i128 sum_inverse = 0;  // points with omega3 = 0, weighted by 1/base3 in total()
    std::int64_t base3 = 1;
  };

  const CountFamily* family_;
  std::vector<Slot> main_;
  std::vector<Slot> line_;  // omega3 = 0 formula of bivariate kinds
  mpz_class side_ = 0;      // exceptional points, added exactly
};

struct NkBreakdown {
  int k = 0;
  bool totally_real = false;
  mpz_class x;
  std::uint64_t radical_bound = 0;          // floor(x^(1/2^(k-1)))
  std::array<std::uint64_t, 4> bounds{};    // P bounds for (1,1), (3,1), (2,1), (2,3)
  std::array<mpz_class, 4> class_sums;
  mpz_class total;
};

// Classes in the order (1,1), (3,1), (2,1), (2,3); divisors 1, 4, 8, 16.
inline constexpr std::array<std::uint64_t, 4> kClassBoundDivisors{1, 4, 8, 16};

NkBreakdown count_N_breakdown(int k, const mpz_class& x, bool totally_real, const SieveOptions& opts = {});
mpz_class count_N(int k, const mpz_class& x, bool totally_real, const SieveOptions& opts = {});

}  // namespace multiquad
