#pragma once

// Segmented smallest-prime-factor sieve and per-integer squarefree profiles.
// Every sum over squarefree radicals in the library streams through here.

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "multiquad/errors.hpp"

namespace multiquad {

using i128 = __int128;

// Default upper bound (exclusive) for any sieve segment. Overridden by the
// MULTIQUAD_SIEVE_BOUND environment variable on first use.
inline constexpr std::uint64_t kDefaultSieveBound = 100'000'000;
// Segment entries are stored as 32-bit words.
inline constexpr std::uint64_t kMaxSieveBound = 0xffffffffull;

std::uint64_t global_sieve_bound();
void set_global_sieve_bound(std::uint64_t bound);

struct SieveOptions {
  std::uint64_t segment_size = std::uint64_t{1} << 22;
  unsigned threads = 1;
};

struct SquarefreeProfile {
  std::uint64_t n = 1;
  bool is_squarefree = true;
  int omega = 0;
  int omega1 = 0;  // prime divisors = 1 mod 4
  int omega3 = 0;  // prime divisors = 3 mod 4
  std::uint64_t radical = 1;

  bool operator==(const SquarefreeProfile&) const = default;
};

class FactorSieve {
 public:
  // Sieves [lo, hi). Throws invalid_range / bound_exceeded.
  FactorSieve(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  bool contains(std::uint64_t n) const { return n >= lo_ && n < hi_; }

  // Smallest prime factor; spf(1) == 1.
  std::uint32_t spf(std::uint64_t n) const;
  SquarefreeProfile profile(std::uint64_t n) const;

  // Raw per-entry views, indexed by n - lo.
  const std::vector<std::uint32_t>& spf_table() const { return spf_; }

  // Fast path for streaming sums: avoids building a SquarefreeProfile.
  bool squarefree_at(std::size_t i) const { return flags_[i] & kSquarefree; }
  int omega1_at(std::size_t i) const { return omega1_[i]; }
  int omega3_at(std::size_t i) const { return omega3_[i]; }

 private:
  static constexpr std::uint8_t kSquarefree = 1;

  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> radical_;
  std::vector<std::uint8_t> omega1_;
  std::vector<std::uint8_t> omega3_;
  std::vector<std::uint8_t> flags_;
};

FactorSieve build_sieve(std::uint64_t lo, std::uint64_t hi);
SquarefreeProfile profile(std::uint64_t n, const FactorSieve& sieve);

// Profile by trial division; for values outside any sieve.
SquarefreeProfile profile_by_trial_division(std::uint64_t n);

// sqf(n): n with its largest square divisor removed, sign kept.
std::int64_t squarefree_part(std::int64_t n);

bool is_squarefree(std::int64_t n);

// Distinct primes of |n| in ascending order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// All primes p < limit (plain Eratosthenes).
std::vector<std::uint32_t> primes_below(std::uint64_t limit);

// Floor of the e-th root of x, exact.
mpz_class integer_root(const mpz_class& x, unsigned long e);

// Splits [lo, hi) into segments, evaluates fn on each segment's sieve (up to
// opts.threads at a time) and returns the results in ascending segment order.
template <class Fn>
auto map_segments(std::uint64_t lo, std::uint64_t hi, const SieveOptions& opts, Fn fn)
    -> std::vector<decltype(fn(std::declval<const FactorSieve&>()))> {
  using Result = decltype(fn(std::declval<const FactorSieve&>()));
  if (lo == 0 || lo >= hi) throw Error(ErrorCode::invalid_range, "map_segments: empty range");
  const std::uint64_t step = std::max<std::uint64_t>(opts.segment_size, 1024);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> segments;
  for (std::uint64_t s = lo; s < hi; s += std::min(step, hi - s)) {
    segments.emplace_back(s, std::min(hi, s + step));
  }
  std::vector<std::optional<Result>> slots(segments.size());
  const std::size_t workers = std::max(1u, opts.threads);
  if (workers == 1 || segments.size() == 1) {
    for (std::size_t i = 0; i < segments.size(); ++i) {
      slots[i].emplace(fn(FactorSieve(segments[i].first, segments[i].second)));
    }
  } else {
    // Batches of `workers` segments, collected by index: the reduction order
    // seen by the caller never depends on scheduling.
    for (std::size_t base = 0; base < segments.size(); base += workers) {
      std::vector<std::future<Result>> pending;
      const std::size_t end = std::min(segments.size(), base + workers);
      for (std::size_t i = base; i < end; ++i) {
        pending.push_back(std::async(std::launch::async, [&fn, seg = segments[i]] {
          return fn(FactorSieve(seg.first, seg.second));
        }));
      }
      for (std::size_t i = base; i < end; ++i) slots[i].emplace(pending[i - base].get());
    }
  }
  std::vector<Result> results;
  results.reserve(slots.size());
  for (auto& r : slots) results.push_back(std::move(*r));
  return results;
}

// Checked 128-bit helpers; overflow raises ErrorCode::overflow.
i128 checked_add(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
mpz_class to_mpz(i128 v);
std::string to_string(i128 v);

}  // namespace multiquad
