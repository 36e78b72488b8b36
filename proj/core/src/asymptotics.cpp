#include "multiquad/asymptotics.hpp"

#include <cmath>
#include <sstream>

#include "multiquad/countform.hpp"
#include "multiquad/errors.hpp"
#include "multiquad/globalcount.hpp"

namespace multiquad {

std::string to_decimal(const Real& v, int digits) {
  return v.str(digits, std::ios_base::scientific);
}

Real to_real(const mpz_class& v) { return Real(v.get_str()); }

Real to_real(const mpq_class& v) { return to_real(mpz_class(v.get_num())) / to_real(mpz_class(v.get_den())); }

Real EulerProduct::lower() const { return value * (1 - tail_bound); }

// e^t <= 1 / (1 - t) for 0 <= t < 1.
Real EulerProduct::upper() const { return value / (1 - tail_bound); }

EulerProduct odd_prime_product(std::int64_t M, std::uint64_t prime_bound) {
  if (M < 1) throw Error(ErrorCode::domain, "Euler product: need M >= 1");
  if (prime_bound <= static_cast<std::uint64_t>(M) + 1) {
    throw Error(ErrorCode::bound_too_small, "Euler product: prime bound must exceed M + 1");
  }
  EulerProduct out;
  out.M = M;
  out.prime_bound = prime_bound;
  Real product = 1;
  for (std::uint32_t p : primes_below(prime_bound + 1)) {
    if (p == 2) continue;
    const Real rp(p);
    const Real shrink = (rp - 1) / rp;
    Real factor = (rp + M) / rp;
    for (std::int64_t i = 0; i < M; ++i) factor *= shrink;
    product *= factor;
  }
  out.value = product;
  // With t = 1/p, f(t) = log(1 + M t) + M log(1 - t) has
  // f'(t) = -M (M+1) t / ((1 + M t)(1 - t)), so |f(t)| <= M (M+1) t^2 for
  // t <= 1/2. Summing over p > B: sum 1/p^2 < 1/(B-1).
  out.tail_bound = Real(M * (M + 1)) / Real(prime_bound - 1);
  return out;
}

EulerProduct H1(std::int64_t M, std::uint64_t prime_bound) {
  EulerProduct out = odd_prime_product(M, prime_bound);
  out.value /= boost::multiprecision::pow(Real(2), Real(M));
  return out;
}

namespace {

mpz_class factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

mpq_class inverse_power(const mpz_class& base, long e) {
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  mpq_class q(mpz_class(1), p);
  q.canonicalize();
  return q;
}

void check_ck_range(int k) {
  if (k < 2 || k > kMaxDerivedExponent) throw Error(ErrorCode::domain, "C_k: need 2 <= k <= 6");
}

}  // namespace

mpq_class ck_closed_form_prefactor(int k) {
  check_ck_range(k);
  const mpz_class two_k = mpz_class(1) << k;
  const long degree = (1L << k) - 2;
  mpq_class c(two_k * two_k + 5 * two_k + 10, 32 * factorial((1L << k) - 1));
  c.canonicalize();
  return c * inverse_power(two_k, degree) * leading_factor(k);
}

mpq_class ck_class_sum_prefactor(int k) {
  check_ck_range(k);
  const mpz_class two_k = mpz_class(1) << k;
  const long degree = (1L << k) - 2;
  mpq_class classes = mpq_class(1) / mpq_class(two_k - 1) + mpq_class(1, 4) + mpq_class(1, 4) +
                      mpq_class(two_k - 2) / 16;
  mpq_class c = classes * leading_factor(k) / mpq_class(factorial(degree));
  return c * inverse_power(mpz_class(1) << (k - 1), degree);
}

ConstantCk constant_Ck(int k, std::uint64_t prime_bound) {
  check_ck_range(k);
  const std::int64_t M = (std::int64_t{1} << k) - 1;
  const EulerProduct product = odd_prime_product(M, prime_bound);
  const EulerProduct h = H1(M, prime_bound);
  ConstantCk out;
  out.k = k;
  out.prime_bound = prime_bound;
  out.closed_form = to_real(ck_closed_form_prefactor(k)) * product.value;
  out.class_sum = to_real(ck_class_sum_prefactor(k)) * h.value;
  out.lower = to_real(ck_closed_form_prefactor(k)) * product.lower();
  out.upper = to_real(ck_closed_form_prefactor(k)) * product.upper();
  out.residual = abs(out.closed_form - out.class_sum) / out.closed_form;
  return out;
}

std::vector<Real> fit_polynomial(const std::vector<Real>& ts, const std::vector<Real>& ys, int degree) {
  const std::size_t m = ts.size();
  const std::size_t n = static_cast<std::size_t>(degree) + 1;
  if (degree < 0 || ys.size() != m || m < n + 1) {
    throw Error(ErrorCode::ill_conditioned_grid, "fit needs more points than coefficients");
  }
  std::vector<std::vector<Real>> a(m, std::vector<Real>(n));
  for (std::size_t i = 0; i < m; ++i) {
    Real p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = p;
      p *= ts[i];
    }
  }
  std::vector<Real> scale(n, Real(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) scale[j] = std::max(scale[j], Real(abs(a[i][j])));
    if (scale[j] == 0) throw Error(ErrorCode::ill_conditioned_grid, "fit: zero column");
    for (std::size_t i = 0; i < m; ++i) a[i][j] /= scale[j];
  }
  std::vector<Real> b = ys;
  const Real tiny = Real("1e-30");
  for (std::size_t j = 0; j < n; ++j) {
    Real norm = 0;
    for (std::size_t i = j; i < m; ++i) norm += a[i][j] * a[i][j];
    norm = sqrt(norm);
    if (norm < tiny) throw Error(ErrorCode::ill_conditioned_grid, "fit: rank deficient design");
    const Real alpha = a[j][j] > 0 ? Real(-norm) : norm;
    std::vector<Real> v(m, Real(0));
    for (std::size_t i = j; i < m; ++i) v[i] = a[i][j];
    v[j] -= alpha;
    Real vv = 0;
    for (std::size_t i = j; i < m; ++i) vv += v[i] * v[i];
    for (std::size_t c = j; c < n; ++c) {
      Real dot = 0;
      for (std::size_t i = j; i < m; ++i) dot += v[i] * a[i][c];
      const Real f = 2 * dot / vv;
      for (std::size_t i = j; i < m; ++i) a[i][c] -= f * v[i];
    }
    Real dot = 0;
    for (std::size_t i = j; i < m; ++i) dot += v[i] * b[i];
    const Real f = 2 * dot / vv;
    for (std::size_t i = j; i < m; ++i) b[i] -= f * v[i];
  }
  std::vector<Real> coef(n);
  for (std::size_t jj = n; jj-- > 0;) {
    Real s = b[jj];
    for (std::size_t c = jj + 1; c < n; ++c) s -= a[jj][c] * coef[c];
    if (abs(a[jj][jj]) < tiny) throw Error(ErrorCode::ill_conditioned_grid, "fit: singular R");
    coef[jj] = s / a[jj][jj];
  }
  for (std::size_t j = 0; j < n; ++j) coef[j] /= scale[j];
  return coef;
}

FitResult fit_leading(int k, const std::vector<mpz_class>& grid, bool totally_real, std::uint64_t prime_bound,
                      const SieveOptions& opts) {
  check_ck_range(k);
  const int degree = (1 << k) - 2;
  if (grid.size() < static_cast<std::size_t>((1 << k) + 2)) {
    throw Error(ErrorCode::ill_conditioned_grid, "fit_leading: grid needs at least 2^k + 2 points");
  }
  mpz_class lo = grid.front(), hi = grid.front();
  for (const mpz_class& x : grid) {
    if (x < 2) throw Error(ErrorCode::ill_conditioned_grid, "fit_leading: grid points must be >= 2");
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (hi < lo * 1000) throw Error(ErrorCode::ill_conditioned_grid, "fit_leading: grid must span 3 decades");

  FitResult out;
  out.k = k;
  out.totally_real = totally_real;
  out.grid = grid;
  std::vector<Real> ts, ys;
  const Real root = Real(1) / Real(1 << (k - 1));
  for (const mpz_class& x : grid) {
    out.counts.push_back(count_N(k, x, totally_real, opts));
    const Real rx = to_real(x);
    ts.push_back(log(rx));
    ys.push_back(to_real(out.counts.back()) / pow(rx, root));
  }
  out.coefficients = fit_polynomial(ts, ys, degree);
  out.alpha = out.coefficients.back();
  out.reference = constant_Ck(k, prime_bound).closed_form;
  if (totally_real) out.reference /= Real(1 << k);
  out.ratio = out.alpha / out.reference;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Real fit = 0;
    for (std::size_t j = out.coefficients.size(); j-- > 0;) fit = fit * ts[i] + out.coefficients[j];
    out.relative_residuals.push_back((ys[i] - fit) / fit);
    out.residual_to_leading.push_back(abs(ys[i] - fit) / (out.alpha * pow(ts[i], Real(degree))));
  }
  return out;
}

LowerOrderReport lower_order_check(std::int64_t M, std::int64_t N, const std::vector<std::uint64_t>& grid,
                                   const SieveOptions& opts) {
  if (M < 1 || N < -1 || N > M) throw Error(ErrorCode::domain, "lower_order_check: need M >= N >= -1, M >= 1");
  LowerOrderReport out;
  out.M = M;
  out.N = N;
  for (std::uint64_t x : grid) {
    if (x < 3) throw Error(ErrorCode::domain, "lower_order_check: grid points must be >= 3");
    LowerOrderRow row;
    row.x = x;
    row.sum = sum_A_bivariate(M, N, x, opts);
    const Real rx(x);
    row.ratio = abs(to_real(row.sum)) / (rx * pow(log(rx), Real(M - 1)));
    out.rows.push_back(std::move(row));
  }
  out.decreasing = out.rows.size() >= 2;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (!(out.rows[i].ratio < out.rows[i - 1].ratio)) out.decreasing = false;
  }
  return out;
}

}  // namespace multiquad
