#include "multiquad/arith.hpp"

#include <atomic>
#include <cstdlib>
#include <numeric>

namespace multiquad {

namespace {

std::uint64_t bound_from_env() {
  const char* env = std::getenv("MULTIQUAD_SIEVE_BOUND");
  if (env == nullptr || *env == '\0') return kDefaultSieveBound;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v < 2 || v > kMaxSieveBound) {
    throw Error(ErrorCode::bound_exceeded,
                std::string("MULTIQUAD_SIEVE_BOUND must be an integer in [2, 2^32-1], got '") +
                    env + "'");
  }
  return v;
}

std::atomic<std::uint64_t>& bound_slot() {
  static std::atomic<std::uint64_t> slot{bound_from_env()};
  return slot;
}

}  // namespace

std::uint64_t global_sieve_bound() { return bound_slot().load(); }

void set_global_sieve_bound(std::uint64_t bound) {
  if (bound < 2 || bound > kMaxSieveBound) {
    throw Error(ErrorCode::bound_exceeded, "sieve bound must lie in [2, 2^32-1]");
  }
  bound_slot().store(bound);
}

std::vector<std::uint32_t> primes_below(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit <= 2) return primes;
  std::vector<bool> composite(limit, false);
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
  }
  return primes;
}

FactorSieve::FactorSieve(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
  if (lo < 1 || lo >= hi) {
    throw Error(ErrorCode::invalid_range, "build_sieve: need 1 <= lo < hi, got [" +
                                              std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  if (hi > global_sieve_bound()) {
    throw Error(ErrorCode::bound_exceeded, "build_sieve: hi = " + std::to_string(hi) +
                                               " exceeds sieve bound " +
                                               std::to_string(global_sieve_bound()));
  }
  const std::size_t len = hi - lo;
  spf_.assign(len, 0);
  radical_.assign(len, 1);
  omega1_.assign(len, 0);
  omega3_.assign(len, 0);
  flags_.assign(len, kSquarefree);
  std::vector<std::uint32_t> rest(len);
  for (std::size_t i = 0; i < len; ++i) rest[i] = static_cast<std::uint32_t>(lo + i);

  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= hi - 1) ++root;
  for (std::uint32_t p : primes_below(root + 1)) {
    const std::uint64_t first = (lo + p - 1) / p * p;
    for (std::uint64_t m = first; m < hi; m += p) {
      const std::size_t i = m - lo;
      if (spf_[i] == 0) spf_[i] = p;
      std::uint32_t r = rest[i] / p;
      if (r % p == 0) {
        flags_[i] &= static_cast<std::uint8_t>(~kSquarefree);
        do r /= p; while (r % p == 0);
      }
      rest[i] = r;
      radical_[i] *= p;
      if (p % 4 == 1) ++omega1_[i];
      else if (p % 4 == 3) ++omega3_[i];
    }
  }
  // What survives trial by primes <= sqrt(hi) is 1 or a single large prime.
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint32_t q = rest[i];
    if (q > 1) {
      if (spf_[i] == 0) spf_[i] = q;
      radical_[i] *= q;
      if (q % 4 == 1) ++omega1_[i];
      else if (q % 4 == 3) ++omega3_[i];
    }
    if (lo + i == 1) spf_[i] = 1;
  }
}

std::uint32_t FactorSieve::spf(std::uint64_t n) const {
  if (!contains(n)) {
    throw Error(ErrorCode::out_of_range, "spf: " + std::to_string(n) + " outside sieve range");
  }
  return spf_[n - lo_];
}

SquarefreeProfile FactorSieve::profile(std::uint64_t n) const {
  if (!contains(n)) {
    throw Error(ErrorCode::out_of_range, "profile: " + std::to_string(n) + " outside sieve range");
  }
  const std::size_t i = n - lo_;
  SquarefreeProfile p;
  p.n = n;
  p.is_squarefree = flags_[i] & kSquarefree;
  p.omega1 = omega1_[i];
  p.omega3 = omega3_[i];
  p.omega = p.omega1 + p.omega3 + (n % 2 == 0 ? 1 : 0);
  p.radical = radical_[i];
  return p;
}

FactorSieve build_sieve(std::uint64_t lo, std::uint64_t hi) { return FactorSieve(lo, hi); }

SquarefreeProfile profile(std::uint64_t n, const FactorSieve& sieve) { return sieve.profile(n); }

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

SquarefreeProfile profile_by_trial_division(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::zero_input, "profile: n must be positive");
  SquarefreeProfile p;
  p.n = n;
  std::uint64_t m = n;
  for (std::uint64_t q = 2; q * q <= m; q += (q == 2 ? 1 : 2)) {
    if (m % q != 0) continue;
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    if (e > 1) p.is_squarefree = false;
    p.radical *= q;
    ++p.omega;
    if (q % 4 == 1) ++p.omega1;
    else if (q % 4 == 3) ++p.omega3;
  }
  if (m > 1) {
    p.radical *= m;
    ++p.omega;
    if (m % 4 == 1) ++p.omega1;
    else if (m % 4 == 3) ++p.omega3;
  }
  return p;
}

std::int64_t squarefree_part(std::int64_t n) {
  if (n == 0) throw Error(ErrorCode::zero_input, "squarefree_part: n must be nonzero");
  if (n == INT64_MIN) throw Error(ErrorCode::out_of_range, "squarefree_part: |n| too large");
  const bool negative = n < 0;
  std::uint64_t m = static_cast<std::uint64_t>(negative ? -n : n);
  std::uint64_t out = 1;
  for (std::uint64_t q = 2; q * q <= m; q += (q == 2 ? 1 : 2)) {
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    if (e % 2 == 1) out *= q;
  }
  out *= m;
  const auto s = static_cast<std::int64_t>(out);
  return negative ? -s : s;
}

bool is_squarefree(std::int64_t n) { return n != 0 && squarefree_part(n) == n; }

mpz_class integer_root(const mpz_class& x, unsigned long e) {
  if (x < 0 || e == 0) throw Error(ErrorCode::domain, "integer_root: need x >= 0 and e >= 1");
  mpz_class r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::overflow, "128-bit accumulator overflow");
  return r;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::overflow, "128-bit product overflow");
  return r;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work in the negative range so INT128_MIN is representable.
  std::string digits;
  i128 w = negative ? v : -v;
  while (w != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(w % 10)));
    w /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

mpz_class to_mpz(i128 v) { return mpz_class(to_string(v)); }

}  // namespace multiquad
