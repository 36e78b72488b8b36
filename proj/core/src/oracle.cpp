#include "multiquad/oracle.hpp"

#include <algorithm>
#include <set>

#include "multiquad/arith.hpp"

namespace multiquad {

bool FieldFilter::accepts(const FieldKey& key) const {
  if (totally_real_only && key.elements().front() < 0) return false;
  if (i_free_only && !is_i_free(key)) return false;
  if (mod4 && mod4_class(key) != *mod4) return false;
  return true;
}

namespace {

void check_inputs(std::uint64_t P, int k, const FieldFilter& filter, int omega) {
  if (P == 0 || squarefree_part(static_cast<std::int64_t>(P)) != static_cast<std::int64_t>(P)) {
    throw Error(ErrorCode::not_squarefree, "radical " + std::to_string(P) + " is not squarefree");
  }
  if (k < 1 || k > kMaxExponent) throw Error(ErrorCode::domain, "k out of range");
  if (filter.mod4 && k < 2) throw Error(ErrorCode::domain, "mod-4 filter needs k >= 2");
  if (omega > kOracleMaxOmega) {
    throw Error(ErrorCode::budget_exceeded, "omega(P) = " + std::to_string(omega) +
                                                " exceeds the oracle budget of " +
                                                std::to_string(kOracleMaxOmega));
  }
}

// Positive normal presentations with exactly the given primes, ascending
// prime order: each prime is either the pivot of the next entry or divides a
// nonempty subset of the entries opened so far.
class PatternWalker {
 public:
  PatternWalker(const std::vector<std::uint64_t>& primes, int k) : primes_(primes), k_(k) {}

  template <class Visit>
  void walk(Visit&& visit) {
    std::vector<std::int64_t> entries(static_cast<std::size_t>(k_), 1);
    step(0, 0, entries, visit);
  }

 private:
  template <class Visit>
  void step(std::size_t idx, int m, std::vector<std::int64_t>& entries, Visit& visit) {
    if (idx == primes_.size()) {
      if (m == k_) {
        if (++visited_ > kOracleCandidateBudget) {
          throw Error(ErrorCode::budget_exceeded, "pattern enumeration exceeds budget");
        }
        visit(entries);
      }
      return;
    }
    // Not enough primes left to open the remaining entries.
    if (static_cast<int>(primes_.size() - idx) < k_ - m) return;
    const auto p = static_cast<std::int64_t>(primes_[idx]);
    if (m < k_) {
      entries[m] *= p;
      step(idx + 1, m + 1, entries, visit);
      entries[m] /= p;
    }
    for (unsigned subset = 1; subset < (1u << m); ++subset) {
      for (int j = 0; j < m; ++j) if (subset >> j & 1u) entries[j] *= p;
      step(idx + 1, m, entries, visit);
      for (int j = 0; j < m; ++j) if (subset >> j & 1u) entries[j] /= p;
    }
  }

  const std::vector<std::uint64_t>& primes_;
  int k_;
  std::uint64_t visited_ = 0;
};

std::vector<FieldKey> by_normal_patterns(const std::vector<std::uint64_t>& primes, int k,
                                         const FieldFilter& filter) {
  std::set<FieldKey> out;
  auto keep = [&](const FieldKey& key) {
    if (filter.accepts(key)) out.insert(key);
  };

  // i-free fields: one normal presentation each; signs are free.
  PatternWalker(primes, k).walk([&](const std::vector<std::int64_t>& entries) {
    const unsigned sign_patterns = filter.totally_real_only ? 1u : (1u << k);
    for (unsigned signs = 0; signs < sign_patterns; ++signs) {
      std::vector<std::int64_t> a = entries;
      for (int j = 0; j < k; ++j) if (signs >> j & 1u) a[j] = -a[j];
      keep(FieldKey::from_elements(a));
    }
  });

  // Fields containing i: -1 adjoined to a totally real field of degree 2^(k-1).
  if (!filter.i_free_only && !filter.totally_real_only) {
    if (k == 1) {
      if (primes.empty()) {
        const std::int64_t minus_one = -1;
        keep(FieldKey::from_elements(std::span(&minus_one, 1)));
      }
    } else {
      PatternWalker(primes, k - 1).walk([&](const std::vector<std::int64_t>& entries) {
        std::vector<std::int64_t> a{-1};
        a.insert(a.end(), entries.begin(), entries.end());
        keep(FieldKey::from_elements(a));
      });
    }
  }
  return {out.begin(), out.end()};
}

long double gaussian_binomial2(int n, int k) {
  long double num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= static_cast<long double>((1ull << (n - i)) - 1);
    den *= static_cast<long double>((1ull << (i + 1)) - 1);
  }
  return num / den;
}

// Coordinates: bit 0 is the sign (-1), bit i is primes[i-1].
std::vector<FieldKey> by_subgroups(const std::vector<std::uint64_t>& primes, int k,
                                   const FieldFilter& filter) {
  const int dim = static_cast<int>(primes.size()) + 1;
  if (k > dim) return {};
  if (gaussian_binomial2(dim, k) > static_cast<long double>(kOracleCandidateBudget)) {
    throw Error(ErrorCode::budget_exceeded, "subgroup enumeration exceeds budget");
  }
  const std::uint32_t all_primes = ((1u << dim) - 1) & ~1u;

  auto to_integer = [&](std::uint32_t v) {
    std::int64_t d = 1;
    for (int b = 1; b < dim; ++b) if (v >> b & 1u) d *= static_cast<std::int64_t>(primes[b - 1]);
    return (v & 1u) ? -d : d;
  };

  std::set<FieldKey> out;
  std::vector<int> pivots(static_cast<std::size_t>(k));
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(k));

  // Reduced row echelon forms: choose pivot columns, then every free entry.
  auto each_pivot_set = [&](auto&& self, int row, int start) -> void {
    if (row == k) {
      std::vector<std::pair<int, int>> free;  // (row, column)
      std::uint32_t pivot_mask = 0;
      for (int c : pivots) pivot_mask |= 1u << c;
      for (int r = 0; r < k; ++r) {
        for (int c = pivots[r] + 1; c < dim; ++c) {
          if (!(pivot_mask >> c & 1u)) free.emplace_back(r, c);
        }
      }
      const std::uint64_t combos = std::uint64_t{1} << free.size();
      for (std::uint64_t bits = 0; bits < combos; ++bits) {
        for (int r = 0; r < k; ++r) rows[r] = 1u << pivots[r];
        for (std::size_t f = 0; f < free.size(); ++f) {
          if (bits >> f & 1u) rows[free[f].first] |= 1u << free[f].second;
        }
        std::uint32_t support = 0;
        bool positive = true;
        for (std::uint32_t v : rows) {
          support |= v;
          if (v & 1u) positive = false;
        }
        if ((support & all_primes) != all_primes) continue;  // radical is a proper divisor of P
        if (filter.totally_real_only && !positive) continue;
        std::vector<std::int64_t> gens;
        for (std::uint32_t v : rows) gens.push_back(to_integer(v));
        FieldKey key = FieldKey::from_elements(gens);
        if (filter.accepts(key)) out.insert(std::move(key));
      }
      return;
    }
    for (int c = start; c <= dim - (k - row); ++c) {
      pivots[row] = c;
      self(self, row + 1, c + 1);
    }
  };
  each_pivot_set(each_pivot_set, 0, 0);
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<FieldKey> enumerate_by_radical(std::uint64_t P, int k, const FieldFilter& filter,
                                           OracleMethod method) {
  const std::vector<std::uint64_t> primes = prime_factors(P);
  check_inputs(P, k, filter, static_cast<int>(primes.size()));
  switch (method) {
    case OracleMethod::normal_patterns: return by_normal_patterns(primes, k, filter);
    case OracleMethod::subgroups: return by_subgroups(primes, k, filter);
  }
  return {};
}

std::vector<DiscriminantEntry> enumerate_by_discriminant(std::uint64_t x, int k,
                                                         const FieldFilter& filter,
                                                         OracleMethod method) {
  if (k < 2 || k > kMaxExponent) throw Error(ErrorCode::domain, "enumerate_by_discriminant: need k >= 2");
  if (x == 0) throw Error(ErrorCode::domain, "enumerate_by_discriminant: x must be positive");
  const mpz_class root = integer_root(mpz_class(std::to_string(x)), 1ul << (k - 1));
  const std::uint64_t bound = root.get_ui();
  if (bound > kOracleRadicalBudget) {
    throw Error(ErrorCode::budget_exceeded, "enumerate_by_discriminant: radical bound " +
                                                std::to_string(bound) + " exceeds budget");
  }
  std::vector<DiscriminantEntry> out;
  for (std::uint64_t R = 1; R <= bound; ++R) {
    if (!profile_by_trial_division(R).is_squarefree) continue;
    for (FieldKey& key : enumerate_by_radical(R, k, filter, method)) {
      const std::uint64_t d = discriminant(key);
      if (d <= x) out.push_back({d, std::move(key)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace multiquad
