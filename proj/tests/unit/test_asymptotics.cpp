#include <doctest.h>

#include <boost/math/constants/constants.hpp>

#include "multiquad/asymptotics.hpp"
#include "multiquad/countform.hpp"
#include "multiquad/globalcount.hpp"

using namespace multiquad;

TEST_CASE("H1(1) is 4/pi^2") {
  const EulerProduct h = H1(1, 10'000'000);
  const Real pi = boost::math::constants::pi<Real>();
  CHECK(abs(h.value * pi * pi / 4 - 1) < Real("1e-4"));
  // The interval must contain the exact value.
  CHECK(h.lower() <= 4 / (pi * pi));
  CHECK(4 / (pi * pi) <= h.upper());
}

TEST_CASE("H1: interval behaviour") {
  const EulerProduct small = H1(3, 100'000);
  const EulerProduct large = H1(3, 10'000'000);
  CHECK(large.upper() - large.lower() < small.upper() - small.lower());
  CHECK(large.tail_bound < small.tail_bound);
  CHECK(small.lower() <= large.value);
  CHECK(large.value <= small.upper());
  const EulerProduct mid = H1(3, 1'000'000);
  CHECK(abs(large.value - mid.value) <= mid.value * mid.tail_bound * 2);
  CHECK_THROWS_AS(H1(15, 16), Error);
  CHECK_NOTHROW(H1(15, 17));
}

TEST_CASE("C_k prefactors") {
  CHECK(ck_closed_form_prefactor(2) == mpq_class(23, 3072));
  for (int k = 2; k <= 6; ++k) {
    CHECK(ck_closed_form_prefactor(k) == ck_class_sum_prefactor(k) / (mpq_class(1) << ((1 << k) - 1)));
    CHECK(ck_closed_form_prefactor(k) > 0);
  }
  CHECK_THROWS_AS(ck_closed_form_prefactor(1), Error);
}

TEST_CASE("C_k: the two expressions agree") {
  for (int k = 2; k <= 4; ++k) {
    const ConstantCk c = constant_Ck(k, 1'000'000);
    CHECK(c.residual < Real("1e-12"));
    CHECK(c.closed_form > 0);
    CHECK(c.lower <= c.closed_form);
    CHECK(c.closed_form <= c.upper);
  }
}

TEST_CASE("sum_A leading order") {
  auto ratio = [](std::int64_t M, std::uint64_t x) {
    const EulerProduct h = H1(M, 1'000'000);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(M - 1));
    const Real rx(x);
    return Real(to_real(sum_A(M, x)) * to_real(fact) / (h.value * rx * pow(log(rx), Real(M - 1))));
  };
  const Real r1 = ratio(1, 10'000'000);
  CHECK(r1 > Real("0.5"));
  CHECK(r1 < Real("1.5"));
  // For M = 3 the secondary term is still ~70% of the main one at 10^7, so
  // the ratio sits near 1.8; it has to fall towards 1 as x grows.
  const Real r3_small = ratio(3, 100'000);
  const Real r3 = ratio(3, 10'000'000);
  CHECK(r3 > Real("0.5"));
  CHECK(r3 < Real("2.5"));
  CHECK(r3 < r3_small);
}

TEST_CASE("fit_polynomial recovers an exact polynomial") {
  std::vector<Real> ts, ys;
  for (int i = 0; i < 8; ++i) {
    const Real t = Real(18) + i * Real("2.3");
    ts.push_back(t);
    ys.push_back(Real("0.25") * t * t - 3 * t + 7);
  }
  const auto c = fit_polynomial(ts, ys, 2);
  CHECK(abs(c[2] - Real("0.25")) < Real("1e-25"));
  CHECK(abs(c[1] + 3) < Real("1e-23"));
  CHECK(abs(c[0] - 7) < Real("1e-21"));
}

TEST_CASE("fit_leading: grid checks") {
  CHECK_THROWS_AS(fit_leading(2, {mpz_class(1000), mpz_class(100000)}, false), Error);
  std::vector<mpz_class> narrow;
  for (int i = 0; i < 8; ++i) narrow.emplace_back(100000 + i * 1000);
  CHECK_THROWS_AS(fit_leading(2, narrow, false), Error);
}

TEST_CASE("lower_order_check: twisted sums lose order") {
  const auto r = lower_order_check(3, 1, {100'000, 1'000'000, 10'000'000});
  CHECK(r.decreasing);
  CHECK(r.rows.back().ratio < r.rows.front().ratio);
  const auto s = lower_order_check(1, -1, {100'000, 10'000'000});
  CHECK(s.rows.back().ratio < s.rows.front().ratio);
  const auto control = lower_order_check(3, 3, {100'000, 10'000'000});
  // Full pole: the ratio stays of constant order.
  CHECK(control.rows.back().ratio > control.rows.front().ratio / 4);
  CHECK_THROWS_AS(lower_order_check(3, -2, {1000}), Error);
}
