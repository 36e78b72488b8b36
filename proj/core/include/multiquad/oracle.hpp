#pragma once

// Brute-force ground truth: every multi-quadratic field with a given radical,
// or with discriminant below a bound. Two unrelated enumeration routes.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "multiquad/fields.hpp"

namespace multiquad {

struct FieldFilter {
  bool i_free_only = false;
  bool totally_real_only = false;
  std::optional<Mod4Class> mod4;

  bool accepts(const FieldKey& key) const;
};

enum class OracleMethod {
  normal_patterns,  // divisibility patterns of normal presentations
  subgroups,        // rank-k subspaces of GF(2)^(1 + omega(P))
};

// Largest omega(P) either oracle accepts.
inline constexpr int kOracleMaxOmega = 12;
// Cap on the number of candidates (patterns x signs, or subspaces).
inline constexpr std::uint64_t kOracleCandidateBudget = 20'000'000;

// Fields of degree 2^k whose radical rad(a1 ... ak) is exactly P, ascending.
std::vector<FieldKey> enumerate_by_radical(std::uint64_t P, int k, const FieldFilter& filter,
                                           OracleMethod method = OracleMethod::subgroups);

struct DiscriminantEntry {
  std::uint64_t discriminant;
  FieldKey key;

  auto operator<=>(const DiscriminantEntry&) const = default;
};

// Largest radical bound enumerate_by_discriminant will scan.
inline constexpr std::uint64_t kOracleRadicalBudget = 200'000;

// All fields with D(K) <= x, sorted by (D, key).
std::vector<DiscriminantEntry> enumerate_by_discriminant(std::uint64_t x, int k,
                                                         const FieldFilter& filter,
                                                         OracleMethod method = OracleMethod::subgroups);

}  // namespace multiquad
