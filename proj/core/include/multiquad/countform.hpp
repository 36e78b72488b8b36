#pragma once

// Exact counts of multi-quadratic fields with a fixed radical.
//
// R_k(P) counts totally real fields of degree 2^k with rad(a1...ak) = P,
// Q_k(P) all of them; the superscripted kinds split these by the mod-4 class
// of the field. Each count is an ExpPoly in omega(P) (or in omega1, omega3),
// derived here with every coefficient exact.

#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "multiquad/arith.hpp"
#include "multiquad/exppoly.hpp"

namespace multiquad {

enum class FamilyKind { R, Q, R11, R31, R21, R23, Q11, Q31, Q21, Q23 };

inline constexpr FamilyKind kAllFamilyKinds[] = {
    FamilyKind::R,   FamilyKind::Q,   FamilyKind::R11, FamilyKind::R31, FamilyKind::R21,
    FamilyKind::R23, FamilyKind::Q11, FamilyKind::Q31, FamilyKind::Q21, FamilyKind::Q23,
};

inline constexpr int kMaxDerivedExponent = 6;

std::string_view to_string(FamilyKind kind);
// Accepts "R", "Q", "R11", "R^(1,1)", "Q(2,3)", ...
FamilyKind parse_family_kind(std::string_view text);

bool is_totally_real_kind(FamilyKind kind);
bool is_mod4_kind(FamilyKind kind);
// Kinds counted at radical 2P and evaluated on the odd part P.
bool is_even_radical_kind(FamilyKind kind);
// Kinds that depend on (omega1, omega3) rather than omega alone.
bool is_bivariate_kind(FamilyKind kind);

// F_k = prod_{j=1}^{k-1} 1 / (2^k - 2^j).
mpq_class leading_factor(int k);

// sum_{j=i+1}^{n} a^(j-i-1) b^(n-j) via the closed form (b^(n-i) - a^(n-i)) / (b - a).
mpq_class geometric_pair_sum(std::int64_t a, std::int64_t b, int n, int i);

// The nested sum over 1 = i1 < i2 < ... < ik <= n of
// 1^(i2-i1-1) 3^(i3-i2-1) ... (2^k-1)^(n-ik), by dynamic programming.
mpz_class nested_sum_Rk(int k, int n);

// Ways to pick a nonempty subset of a b-element set a times so that each
// element's total count has prescribed parity: all even, or one fixed
// pattern that is not all even.
mpq_class parity_subset_count(int a, int b, bool all_even);

enum class ParityConstraint {
  none,
  all_even,            // every a_j = 1 mod 4
  all_even_but_first,  // a_2 ... a_k = 1 mod 4; a_1 carries the prime 2
};

// Positive normal presentations of degree 2^k over a radical with primes in
// the order [2 if leading_two], omega3 primes = 3 mod 4, omega1 primes = 1 mod
// 4, subject to a constraint on how many 3-mod-4 primes each a_j carries.
mpz_class count_normal_patterns(int k, bool leading_two, int omega3, int omega1,
                                ParityConstraint constraint);

// Field counts from the combinatorial derivation (normal presentations, sign
// choices, and the bijection for fields containing i). Univariate kinds read
// omega = omega1 + omega3.
mpz_class combinatorial_count(int k, FamilyKind kind, int omega1, int omega3);

struct CountFamily {
  int k = 0;
  FamilyKind kind = FamilyKind::R;
  ExpPoly poly = ExpPoly::univariate(-1);
  // Bivariate kinds: formula in omega1 used on the line omega3 = 0 when the
  // main formula does not extend there.
  std::optional<ExpPoly> omega3_zero;
  // Points where neither formula applies, keyed by (omega, 0) for univariate
  // kinds and (omega1, omega3) for bivariate ones.
  std::map<std::pair<int, int>, mpz_class> exceptions;

  // Coefficient of the (2^k-1) term, normalized to exponent omega(P)-1 for
  // kinds evaluated at P and to omega(P) for kinds evaluated at 2P.
  mpq_class leading_coefficient() const;
};

// The leading coefficient stated for each kind as a multiple of F_k.
mpq_class expected_leading_coefficient(int k, FamilyKind kind);

// Solves for the coefficients by exact linear algebra against
// combinatorial_count on an overdetermined grid; throws singular_system when
// the basis does not fit.
CountFamily derive_family(int k, FamilyKind kind);

// Memoized derive_family; thread safe.
const CountFamily& cached_family(int k, FamilyKind kind);

// Exact field count at the given class counts (odd part for 2P kinds).
mpz_class eval_count(const CountFamily& family, int omega1, int omega3);
// From a profile: P itself for R/Q, the odd part P for mod-4 kinds.
mpz_class eval_count(const CountFamily& family, const SquarefreeProfile& P);

}  // namespace multiquad
