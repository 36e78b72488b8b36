#include "verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "multiquad/asymptotics.hpp"
#include "multiquad/countform.hpp"
#include "multiquad/globalcount.hpp"
#include "multiquad/oracle.hpp"

namespace multiquad::cli {

namespace {

// Fixed mapping from the engine to ranges, so the sample does not depend on
// the standard library's distribution implementation.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 rng_;
};

template <class T>
std::string str(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string counterexample(const std::string& where, const std::string& expected, const std::string& got) {
  return where + " expected=" + expected + " got=" + got;
}

FieldFilter filter_for(FamilyKind kind) {
  FieldFilter f;
  f.totally_real_only = is_totally_real_kind(kind);
  switch (kind) {
    case FamilyKind::R11:
    case FamilyKind::Q11: f.mod4 = Mod4Class::c11; break;
    case FamilyKind::R31:
    case FamilyKind::Q31: f.mod4 = Mod4Class::c31; break;
    case FamilyKind::R21:
    case FamilyKind::Q21: f.mod4 = Mod4Class::c21; break;
    case FamilyKind::R23:
    case FamilyKind::Q23: f.mod4 = Mod4Class::c23; break;
    default: break;
  }
  return f;
}

// Compares eval_count against the radical oracle at odd squarefree P.
bool formula_matches(int k, FamilyKind kind, std::uint64_t P, CheckResult& r) {
  const std::uint64_t radical = is_even_radical_kind(kind) ? 2 * P : P;
  const std::size_t oracle = radical == 1 ? 0 : enumerate_by_radical(radical, k, filter_for(kind)).size();
  const mpz_class got = eval_count(cached_family(k, kind), profile_by_trial_division(P));
  ++r.cases;
  if (got == oracle) return true;
  r.ok = false;
  r.detail = counterexample("k=" + str(k) + " kind=" + std::string(to_string(kind)) + " P=" + str(P), str(oracle),
                      got.get_str());
  return false;
}

CheckResult formula_grid(const VerifyOptions& opts) {
  CheckResult r{"formulas", "formula_vs_oracle_grid"};
  const std::vector<std::uint64_t> primes{3, 5, 7, 13, 17, 29};
  for (int k = 2; k <= 3; ++k) {
    for (FamilyKind kind : kAllFamilyKinds) {
      for (unsigned mask = 0; mask < 64; ++mask) {
        if (std::popcount(mask) > opts.max_omega) continue;
        std::uint64_t P = 1;
        for (std::size_t i = 0; i < primes.size(); ++i) {
          if (mask >> i & 1) P *= primes[i];
        }
        if (!formula_matches(k, kind, P, r)) return r;
      }
    }
  }
  r.detail = "k=2,3; primes 3,5,7,13,17,29; omega<=" + str(opts.max_omega);
  return r;
}

CheckResult formula_random(const VerifyOptions& opts) {
  CheckResult r{"formulas", "formula_vs_oracle_random"};
  const std::vector<std::uint64_t> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
  Sampler s(opts.seed);
  for (int i = 0; i < 120; ++i) {
    const int k = static_cast<int>(s.between(2, 4));
    const FamilyKind kind = kAllFamilyKinds[s.below(std::size(kAllFamilyKinds))];
    const int omega = static_cast<int>(s.between(0, std::min(opts.max_omega, k == 4 ? 4 : 5)));
    std::vector<std::uint64_t> pool = primes;
    std::uint64_t P = 1;
    for (int j = 0; j < omega; ++j) {
      const std::size_t at = s.below(pool.size());
      P *= pool[at];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
    }
    if (!formula_matches(k, kind, P, r)) return r;
  }
  r.detail = "seed=" + str(opts.seed);
  return r;
}

CheckResult formula_nested(const VerifyOptions&) {
  CheckResult r{"formulas", "formula_vs_nested_sum"};
  for (int k = 1; k <= kMaxDerivedExponent; ++k) {
    for (int n = 1; n <= 14; ++n) {
      const mpz_class expected = nested_sum_Rk(k, n);
      const mpz_class got = eval_count(cached_family(k, FamilyKind::R), n, 0);
      ++r.cases;
      if (expected != got) {
        r.ok = false;
        r.detail = counterexample("k=" + str(k) + " omega=" + str(n), expected.get_str(), got.get_str());
        return r;
      }
    }
  }
  r.detail = "k=1..6; omega=1..14";
  return r;
}

CheckResult identities(const VerifyOptions&) {
  CheckResult r{"formulas", "structural_identities"};
  for (int k = 2; k <= 5; ++k) {
    auto poly = [&](FamilyKind kind) { return cached_family(k, kind).poly; };
    const ExpPoly R = poly(FamilyKind::R);
    const std::vector<std::pair<std::string, bool>> checks{
        {"Q=2^kR_k+R_(k-1)", poly(FamilyKind::Q).same_function(R * mpq_class(1 << k) +
                                                               cached_family(k - 1, FamilyKind::R).poly)},
        {"Q11=R", poly(FamilyKind::Q11) == R},
        {"Q11+Q31=Q", (poly(FamilyKind::Q11) + poly(FamilyKind::Q31)).same_function(poly(FamilyKind::Q))},
        {"Q21+Q23=Q(2P)", (poly(FamilyKind::Q21) + poly(FamilyKind::Q23)).same_function(poly(FamilyKind::Q).shifted(1))},
        {"R11+R31=R", (poly(FamilyKind::R11) + poly(FamilyKind::R31)).same_function(R.lifted())},
        {"R21+R23=R(2P)", (poly(FamilyKind::R21) + poly(FamilyKind::R23)).same_function(R.shifted(1).lifted())},
    };
    for (const auto& [name, ok] : checks) {
      ++r.cases;
      if (!ok) {
        r.ok = false;
        r.detail = "k=" + str(k) + " identity " + name + " fails";
        return r;
      }
    }
    for (FamilyKind kind : kAllFamilyKinds) {
      ++r.cases;
      const mpq_class got = cached_family(k, kind).leading_coefficient();
      const mpq_class expected = expected_leading_coefficient(k, kind);
      if (got != expected) {
        r.ok = false;
        r.detail = counterexample("k=" + str(k) + " leading " + std::string(to_string(kind)), expected.get_str(), got.get_str());
        return r;
      }
    }
  }
  r.detail = "k=2..5";
  return r;
}

CheckResult pair_sums(const VerifyOptions& opts) {
  CheckResult r{"formulas", "geometric_pair_sum"};
  Sampler s(opts.seed + 1);
  while (r.cases < 1000) {
    const std::int64_t a = s.between(-31, 31), b = s.between(-31, 31);
    if (a == b) continue;
    const int n = static_cast<int>(s.between(0, 20));
    const int i = static_cast<int>(s.between(0, n));
    mpq_class literal = 0;
    for (int j = i + 1; j <= n; ++j) literal += rational_pow(a, j - i - 1) * rational_pow(b, n - j);
    const mpq_class got = geometric_pair_sum(a, b, n, i);
    ++r.cases;
    if (got != literal) {
      r.ok = false;
      r.detail = counterexample("a=" + str(a) + " b=" + str(b) + " n=" + str(n) + " i=" + str(i), literal.get_str(),
                          got.get_str());
      return r;
    }
  }
  r.detail = "seed=" + str(opts.seed + 1);
  return r;
}

CheckResult parity_counts(const VerifyOptions&) {
  CheckResult r{"formulas", "parity_subset_count"};
  for (int b = 1; b <= 4; ++b) {
    for (int a = 0; a <= 6; ++a) {
      std::vector<std::uint64_t> hist(std::size_t{1} << b, 0);
      const unsigned top = (1u << b) - 1;
      std::vector<unsigned> seq(static_cast<std::size_t>(a), 1);
      while (true) {
        unsigned x = 0;
        for (unsigned v : seq) x ^= v;
        ++hist[x];
        std::size_t pos = 0;
        while (pos < seq.size() && ++seq[pos] > top) seq[pos++] = 1;
        if (pos == seq.size()) break;
      }
      for (std::size_t v = 0; v < hist.size(); ++v) {
        const mpq_class got = parity_subset_count(a, b, v == 0);
        ++r.cases;
        if (got != mpq_class(static_cast<unsigned long>(hist[v]))) {
          r.ok = false;
          r.detail = counterexample("a=" + str(a) + " b=" + str(b) + " parity=" + str(v), str(hist[v]), got.get_str());
          return r;
        }
      }
    }
  }
  r.detail = "a<=6; b<=4; (a=3,b=2): even=" + parity_subset_count(3, 2, true).get_str() +
             " other=" + parity_subset_count(3, 2, false).get_str();
  return r;
}

// count_N against the discriminant oracle at every step up to `top`, just
// below each step, and at seeded random points up to `random_top`.
CheckResult global_vs_oracle(int k, bool tr, std::uint64_t top, std::uint64_t random_top, int samples,
                             const VerifyOptions& opts) {
  CheckResult r{"global", "count_N_k" + str(k) + (tr ? "_totally_real" : "") + "_vs_oracle"};
  const auto fields = enumerate_by_discriminant(std::max(top, random_top), k, {.totally_real_only = tr});
  auto oracle_at = [&](std::uint64_t x) {
    return static_cast<std::uint64_t>(std::upper_bound(fields.begin(), fields.end(), x,
                                                       [](std::uint64_t v, const DiscriminantEntry& e) {
                                                         return v < e.discriminant;
                                                       }) -
                                      fields.begin());
  };
  auto probe = [&](std::uint64_t x) {
    const mpz_class got = count_N(k, x, tr, opts.sieve);
    const std::uint64_t expected = oracle_at(x);
    ++r.cases;
    if (got == expected) return true;
    r.ok = false;
    r.detail = counterexample("x=" + str(x), str(expected), got.get_str());
    return false;
  };
  std::uint64_t last = 0;
  for (const auto& e : fields) {
    if (e.discriminant > top) break;
    if (e.discriminant == last) continue;
    last = e.discriminant;
    if (!probe(e.discriminant - 1) || !probe(e.discriminant)) return r;
  }
  if (!probe(top)) return r;
  Sampler s(opts.seed + 2 + static_cast<std::uint64_t>(k) * 2 + (tr ? 1 : 0));
  for (int i = 0; i < samples; ++i) {
    if (!probe(1 + s.below(random_top))) return r;
  }
  r.detail = "steps<=" + str(top) + "; " + str(samples) + " random x<=" + str(random_top) + "; fields=" +
             str(oracle_at(top));
  return r;
}

CheckResult global_examples(const VerifyOptions& opts) {
  CheckResult r{"global", "count_N_examples"};
  const std::vector<std::tuple<int, std::uint64_t, bool, std::uint64_t>> cases{
      {2, 143, false, 0}, {2, 144, false, 1}, {2, 256, false, 3}, {2, 1599, true, 0}, {2, 1600, true, 1}};
  for (const auto& [k, x, tr, expected] : cases) {
    const mpz_class got = count_N(k, x, tr, opts.sieve);
    ++r.cases;
    if (got != expected) {
      r.ok = false;
      r.detail = counterexample("k=" + str(k) + " x=" + str(x) + (tr ? " totally_real" : ""), str(expected), got.get_str());
      return r;
    }
  }
  r.detail = "N2(143)=0 N2(144)=1 N2(256)=3 N2+(1600)=1";
  return r;
}

CheckResult sum_segments(const VerifyOptions& opts) {
  CheckResult r{"global", "sum_A_segmented_vs_monolithic"};
  const SieveOptions mono{.segment_size = std::uint64_t{1} << 24, .threads = 1};
  SieveOptions seg = opts.sieve;
  seg.segment_size = 1u << 14;
  for (std::int64_t M : {1, 3, 7, 15}) {
    for (std::int64_t N : {std::int64_t{-1}, std::int64_t{1}, M}) {
      const mpz_class a = sum_A_bivariate(M, N, 2'000'000, mono);
      const mpz_class b = sum_A_bivariate(M, N, 2'000'000, seg);
      ++r.cases;
      if (a != b) {
        r.ok = false;
        r.detail = counterexample("M=" + str(M) + " N=" + str(N) + " x=2000000", a.get_str(), b.get_str());
        return r;
      }
    }
  }
  r.detail = "x=2000000; A_3(x)=" + sum_A(3, 2'000'000, mono).get_str();
  return r;
}

CheckResult h1_identity(const VerifyOptions&) {
  CheckResult r{"asymptotics", "H1_identity"};
  const EulerProduct h = H1(1, 10'000'000);
  const Real pi = boost::math::constants::pi<Real>();
  const Real v = h.value * pi * pi / 4;
  r.cases = 1;
  r.ok = abs(v - 1) < Real("1e-4");
  r.detail = "H1(1,1e7)*pi^2/4=" + to_decimal(v, 15) + " tol=1e-4";
  return r;
}

CheckResult ck_consistency(const VerifyOptions&) {
  CheckResult r{"asymptotics", "C_k_consistency"};
  std::string detail = "prefactor(2)=" + ck_closed_form_prefactor(2).get_str();
  r.ok = ck_closed_form_prefactor(2) == mpq_class(23, 3072);
  r.cases = 1;
  for (int k = 2; k <= 4; ++k) {
    const ConstantCk c = constant_Ck(k, 10'000'000);
    ++r.cases;
    const bool ok = c.residual < Real("1e-12");
    detail += "; C" + str(k) + "=" + to_decimal(c.closed_form, 15) + " residual=" + to_decimal(c.residual, 3);
    if (!ok && r.ok) {
      r.ok = false;
      r.detail = counterexample("k=" + str(k), "residual<1e-12", to_decimal(c.residual, 6));
      return r;
    }
  }
  if (!r.ok) {
    r.detail = counterexample("k=2 prefactor", "23/3072", ck_closed_form_prefactor(2).get_str());
    return r;
  }
  r.detail = detail;
  return r;
}

CheckResult lower_order(const VerifyOptions& opts) {
  CheckResult r{"asymptotics", "lower_order_ratio"};
  std::string detail;
  for (const auto& [M, N] : std::vector<std::pair<int, int>>{{3, 1}, {1, -1}}) {
    const LowerOrderReport rep = lower_order_check(M, N, {100'000, 10'000'000}, opts.sieve);
    ++r.cases;
    const Real lo = rep.rows.front().ratio, hi = rep.rows.back().ratio;
    if (!(hi < lo)) {
      r.ok = false;
      r.detail = counterexample("M=" + str(M) + " N=" + str(N), "r(1e7)<r(1e5)",
                          "r(1e5)=" + to_decimal(lo, 6) + " r(1e7)=" + to_decimal(hi, 6));
      return r;
    }
    detail += (detail.empty() ? "" : "; ") + std::string("(") + str(M) + "," + str(N) + "): r(1e5)=" +
              to_decimal(lo, 6) + " r(1e7)=" + to_decimal(hi, 6);
  }
  r.detail = detail;
  return r;
}

}  // namespace

// Acceptance band and residual rule for the leading-constant fit; see README.
bool fit_within_band(const FitResult& f) { return f.ratio >= Real("0.8") && f.ratio <= Real("1.2"); }

bool fit_residuals_shrink(const FitResult& f) {
  const std::size_t half = f.residual_to_leading.size() / 2;
  if (half == 0) return false;
  Real early = 0, late = 0;
  for (std::size_t i = 0; i < half; ++i) early = std::max(early, f.residual_to_leading[i]);
  for (std::size_t i = f.residual_to_leading.size() - half; i < f.residual_to_leading.size(); ++i) {
    late = std::max(late, f.residual_to_leading[i]);
  }
  return late < early;
}

namespace {

CheckResult leading_fit(bool tr, const VerifyOptions& opts) {
  CheckResult r{"asymptotics", std::string("fit_leading_k2") + (tr ? "_totally_real" : "")};
  std::vector<mpz_class> grid;
  mpz_class x = 100'000'000;
  for (int i = 0; i < 7; ++i, x *= 10) grid.push_back(x);
  const FitResult f = fit_leading(2, grid, tr, 10'000'000, opts.sieve);
  r.cases = grid.size();
  const bool band = fit_within_band(f), shrink = fit_residuals_shrink(f);
  r.ok = band && shrink;
  r.detail = "alpha=" + to_decimal(f.alpha, 10) + " reference=" + to_decimal(f.reference, 10) +
             " ratio=" + to_decimal(f.ratio, 6) + (band ? "" : " ratio outside [0.8,1.2]") +
             (shrink ? "" : " residuals do not shrink");
  return r;
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opts) {
  using Check = std::function<CheckResult(const VerifyOptions&)>;
  const std::vector<std::pair<std::string, Check>> all{
      {"formulas", formula_grid},
      {"formulas", formula_random},
      {"formulas", formula_nested},
      {"formulas", identities},
      {"formulas", pair_sums},
      {"formulas", parity_counts},
      {"global", global_examples},
      {"global", [](const VerifyOptions& o) { return global_vs_oracle(2, false, 1'000'000, 100'000'000, 200, o); }},
      {"global", [](const VerifyOptions& o) { return global_vs_oracle(2, true, 1'000'000, 100'000'000, 200, o); }},
      {"global", [](const VerifyOptions& o) { return global_vs_oracle(3, false, 1'000'000'000, 1'000'000'000, 50, o); }},
      {"global", [](const VerifyOptions& o) { return global_vs_oracle(3, true, 1'000'000'000'000, 1'000'000'000'000, 50, o); }},
      {"global", sum_segments},
      {"asymptotics", h1_identity},
      {"asymptotics", ck_consistency},
      {"asymptotics", lower_order},
      {"asymptotics", [](const VerifyOptions& o) { return leading_fit(false, o); }},
      {"asymptotics", [](const VerifyOptions& o) { return leading_fit(true, o); }},
  };
  if (opts.suite != "all" && opts.suite != "formulas" && opts.suite != "global" && opts.suite != "asymptotics") {
    throw Error(ErrorCode::domain, "unknown suite '" + opts.suite + "'");
  }
  if (opts.max_omega < 0 || opts.max_omega > 6) throw Error(ErrorCode::domain, "--max-omega must lie in [0, 6]");
  std::vector<CheckResult> out;
  for (const auto& [suite, check] : all) {
    if (opts.suite == "all" || opts.suite == suite) out.push_back(check(opts));
  }
  return out;
}

}  // namespace multiquad::cli
