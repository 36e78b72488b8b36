#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multiquad/arith.hpp"
#include "multiquad/asymptotics.hpp"

namespace multiquad::cli {

struct VerifyOptions {
  std::string suite = "all";  // formulas, global, asymptotics, all
  std::uint64_t seed = 1;
  int max_omega = 4;
  SieveOptions sieve;
};

struct CheckResult {
  std::string suite;
  std::string check;
  std::uint64_t cases = 0;
  bool ok = true;
  std::string detail;  // first counterexample, or a short summary
};

// alpha / reference inside [0.8, 1.2].
bool fit_within_band(const FitResult& f);
// The largest residual (relative to the leading term) over the last half of
// the grid is below the largest over the first half.
bool fit_residuals_shrink(const FitResult& f);

// Throws multiquad::Error(domain) for an unknown suite name.
std::vector<CheckResult> run_verify(const VerifyOptions& opts);

}  // namespace multiquad::cli
