#pragma once

// Leading asymptotic constant C_k, the Euler factor H(1), and empirical
// checks of the main term against exact counts.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include "multiquad/arith.hpp"

namespace multiquad {

// 40 decimal digits (~133 bits) of working precision.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>>;

std::string to_decimal(const Real& v, int digits = 30);
Real to_real(const mpz_class& v);
Real to_real(const mpq_class& v);

struct EulerProduct {
  std::int64_t M = 0;
  std::uint64_t prime_bound = 0;
  Real value;
  // Bound on |log(true value / value)| from the primes above prime_bound.
  Real tail_bound;

  Real lower() const;
  Real upper() const;
};

// prod_{2 < p <= B} (1 + M/p)(1 - 1/p)^M with its tail bound.
EulerProduct odd_prime_product(std::int64_t M, std::uint64_t prime_bound);

// H(1) for weight M: (1/2)^M times odd_prime_product.
EulerProduct H1(std::int64_t M, std::uint64_t prime_bound);

// (4^k + 5*2^k + 10) / (32 (2^k-1)!) * (1/2^k)^(2^k-2) * F_k
mpq_class ck_closed_form_prefactor(int k);
// (1/(2^k-1) + 1/4 + 1/4 + (2^k-2)/16) * F_k / (2^k-2)! * (1/2^(k-1))^(2^k-2)
mpq_class ck_class_sum_prefactor(int k);

struct ConstantCk {
  int k = 0;
  std::uint64_t prime_bound = 0;
  Real closed_form;  // prefactor times the odd-prime product
  Real class_sum;    // class-sum prefactor times H(1)
  Real lower;
  Real upper;
  Real residual;     // |closed_form - class_sum| / closed_form
};

ConstantCk constant_Ck(int k, std::uint64_t prime_bound);

// Least squares fit of ys against sum_j c_j t^j, j = 0..degree (Householder
// QR with column scaling). Coefficients in ascending order.
std::vector<Real> fit_polynomial(const std::vector<Real>& ts, const std::vector<Real>& ys, int degree);

struct FitResult {
  int k = 0;
  bool totally_real = false;
  std::vector<mpz_class> grid;
  std::vector<mpz_class> counts;
  std::vector<Real> coefficients;  // ascending powers of log x
  Real alpha;                      // leading coefficient
  Real reference;                  // C_k, or C_k / 2^k for totally real counts
  Real ratio;                      // alpha / reference
  std::vector<Real> relative_residuals;   // (y - fit) / fit
  std::vector<Real> residual_to_leading;  // |y - fit| / (alpha (log x)^degree)
};

FitResult fit_leading(int k, const std::vector<mpz_class>& grid, bool totally_real,
                      std::uint64_t prime_bound = 10'000'000, const SieveOptions& opts = {});

struct LowerOrderRow {
  std::uint64_t x = 0;
  mpz_class sum;
  Real ratio;  // |A_{M,N}(x)| / (x (log x)^(M-1))
};

struct LowerOrderReport {
  std::int64_t M = 0;
  std::int64_t N = 0;
  std::vector<LowerOrderRow> rows;
  bool decreasing = false;  // strictly, across consecutive grid points
};

LowerOrderReport lower_order_check(std::int64_t M, std::int64_t N, const std::vector<std::uint64_t>& grid,
                                   const SieveOptions& opts = {});

}  // namespace multiquad
