#include "multiquad/countform.hpp"

#include <cctype>
#include <functional>
#include <mutex>
#include <string>

#include "multiquad/errors.hpp"

namespace multiquad {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::R: return "R";
    case FamilyKind::Q: return "Q";
    case FamilyKind::R11: return "R^(1,1)";
    case FamilyKind::R31: return "R^(3,1)";
    case FamilyKind::R21: return "R^(2,1)";
    case FamilyKind::R23: return "R^(2,3)";
    case FamilyKind::Q11: return "Q^(1,1)";
    case FamilyKind::Q31: return "Q^(3,1)";
    case FamilyKind::Q21: return "Q^(2,1)";
    case FamilyKind::Q23: return "Q^(2,3)";
  }
  return "?";
}

FamilyKind parse_family_kind(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != '^' && ch != '(' && ch != ')' && ch != ',' && ch != ' ' && ch != '_') {
      s += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
  }
  for (FamilyKind kind : kAllFamilyKinds) {
    std::string name;
    for (char ch : to_string(kind)) {
      if (ch != '^' && ch != '(' && ch != ')' && ch != ',') name += ch;
    }
    if (name == s) return kind;
  }
  throw Error(ErrorCode::domain, "unknown family kind '" + std::string(text) + "'");
}

bool is_totally_real_kind(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::R:
    case FamilyKind::R11:
    case FamilyKind::R31:
    case FamilyKind::R21:
    case FamilyKind::R23: return true;
    default: return false;
  }
}

bool is_mod4_kind(FamilyKind kind) { return kind != FamilyKind::R && kind != FamilyKind::Q; }

bool is_even_radical_kind(FamilyKind kind) {
  return kind == FamilyKind::R21 || kind == FamilyKind::R23 || kind == FamilyKind::Q21 ||
         kind == FamilyKind::Q23;
}

bool is_bivariate_kind(FamilyKind kind) { return is_totally_real_kind(kind) && is_mod4_kind(kind); }

namespace {

mpz_class pow2(int e) {
  mpz_class r = 1;
  r <<= e;
  return r;
}

std::int64_t mersenne(int j) { return (std::int64_t{1} << j) - 1; }

void check_exponent(int k, FamilyKind kind) {
  if (k < 1 || k > kMaxDerivedExponent) {
    throw Error(ErrorCode::domain, "k = " + std::to_string(k) + " outside [1, " +
                                       std::to_string(kMaxDerivedExponent) + "]");
  }
  if (is_mod4_kind(kind) && k < 2) throw Error(ErrorCode::domain, "mod-4 kinds need k >= 2");
}

}  // namespace

mpq_class leading_factor(int k) {
  mpq_class f = 1;
  for (int j = 1; j < k; ++j) f /= mpq_class(pow2(k) - pow2(j));
  return f;
}

mpq_class geometric_pair_sum(std::int64_t a, std::int64_t b, int n, int i) {
  if (a == b) throw Error(ErrorCode::equal_bases, "geometric_pair_sum: a == b");
  if (n < i) throw Error(ErrorCode::domain, "geometric_pair_sum: need n >= i");
  mpq_class r = rational_pow(b, n - i) - rational_pow(a, n - i);
  r /= mpq_class(mpz_class(std::to_string(b - a)));
  return r;
}

mpz_class nested_sum_Rk(int k, int n) {
  if (k < 1) throw Error(ErrorCode::domain, "nested_sum_Rk: need k >= 1");
  if (n < k) return 0;
  // ways[m][i]: weight of the choices for primes 1..i with i_m = i.
  std::vector<std::vector<mpz_class>> ways(k + 1, std::vector<mpz_class>(n + 1));
  ways[1][1] = 1;
  for (int m = 1; m < k; ++m) {
    const mpz_class base = pow2(m) - 1;
    for (int i = 1; i <= n; ++i) {
      if (ways[m][i] == 0) continue;
      mpz_class gap = 1;  // base^(next - i - 1)
      for (int next = i + 1; next <= n; ++next) {
        ways[m + 1][next] += ways[m][i] * gap;
        gap *= base;
      }
    }
  }
  mpz_class total = 0;
  const mpz_class top = pow2(k) - 1;
  for (int i = k; i <= n; ++i) {
    mpz_class tail;
    mpz_pow_ui(tail.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(n - i));
    total += ways[k][i] * tail;
  }
  return total;
}

mpq_class parity_subset_count(int a, int b, bool all_even) {
  if (a < 0 || b < 1) throw Error(ErrorCode::domain, "parity_subset_count: need a >= 0, b >= 1");
  const mpz_class choices = pow2(b) - 1;
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), choices.get_mpz_t(), static_cast<unsigned long>(a));
  const int sign = (a % 2 == 0) ? 1 : -1;
  mpq_class r = all_even ? mpq_class(power + choices * sign) : mpq_class(power - sign);
  r /= mpq_class(pow2(b));
  return r;
}

mpz_class count_normal_patterns(int k, bool leading_two, int omega3, int omega1,
                                ParityConstraint constraint) {
  if (k < 0 || omega3 < 0 || omega1 < 0) throw Error(ErrorCode::domain, "count_normal_patterns: negative input");
  enum class Type { two, three, one };
  std::vector<Type> types;
  if (leading_two) types.push_back(Type::two);
  types.insert(types.end(), static_cast<std::size_t>(omega3), Type::three);
  types.insert(types.end(), static_cast<std::size_t>(omega1), Type::one);
  const int n = static_cast<int>(types.size());
  if (k == 0) return n == 0 ? 1 : 0;
  if (n < k) return 0;

  // Gap of primes between consecutive pivots with m entries open: 1-mod-4
  // primes pick any nonempty subset; 3-mod-4 primes move the parity vector,
  // and the number of ways to reach a given parity change over a run of r of
  // them depends only on whether the change is zero.
  auto gap = [&](const std::vector<mpz_class>& parity, int m, int from, int to) {
    int r3 = 0, r1 = 0;
    for (int i = from; i < to; ++i) (types[i] == Type::three ? r3 : r1)++;
    mpz_class free_part;
    mpz_pow_ui(free_part.get_mpz_t(), mpz_class(pow2(m) - 1).get_mpz_t(), static_cast<unsigned long>(r1));
    const mpq_class same_q = parity_subset_count(r3, m, true);
    const mpq_class other_q = parity_subset_count(r3, m, false);
    if (same_q.get_den() != 1 || other_q.get_den() != 1) {
      throw Error(ErrorCode::internal, "parity_subset_count returned a non-integer");
    }
    const mpz_class same = same_q.get_num(), other = other_q.get_num();
    mpz_class total = 0;
    for (const mpz_class& v : parity) total += v;
    std::vector<mpz_class> out(parity.size());
    // Only the low m bits can be set before entry m+1 opens.
    const std::size_t reach = std::size_t{1} << m;
    for (std::size_t v = 0; v < reach; ++v) out[v] = free_part * (other * total + (same - other) * parity[v]);
    return out;
  };

  const std::size_t states = std::size_t{1} << k;
  // at[m][i]: parity distribution with entry m opened at prime i.
  std::vector<std::vector<std::vector<mpz_class>>> at(
      k + 1, std::vector<std::vector<mpz_class>>(n, std::vector<mpz_class>(states)));
  at[1][0][types[0] == Type::three ? 1 : 0] = 1;
  for (int m = 1; m < k; ++m) {
    for (int i = 0; i < n; ++i) {
      bool live = false;
      for (const mpz_class& v : at[m][i]) live = live || v != 0;
      if (!live) continue;
      for (int next = i + 1; next < n; ++next) {
        std::vector<mpz_class> moved = gap(at[m][i], m, i + 1, next);
        const std::size_t bit = types[next] == Type::three ? (std::size_t{1} << m) : 0;
        for (std::size_t u = 0; u < states; ++u) {
          if (moved[u] != 0) at[m + 1][next][u | bit] += moved[u];
        }
      }
    }
  }
  mpz_class result = 0;
  for (int i = k - 1; i < n; ++i) {
    const std::vector<mpz_class> final_parity = gap(at[k][i], k, i + 1, n);
    for (std::size_t u = 0; u < states; ++u) {
      const bool ok = constraint == ParityConstraint::none ||
                      (constraint == ParityConstraint::all_even && u == 0) ||
                      (constraint == ParityConstraint::all_even_but_first && (u >> 1) == 0);
      if (ok) result += final_parity[u];
    }
  }
  return result;
}

namespace {

mpz_class totally_real_count(int k, int omega) {
  if (k == 0) return omega == 0 ? 1 : 0;
  return nested_sum_Rk(k, omega);
}

mpz_class general_count(int k, int omega) {
  return pow2(k) * totally_real_count(k, omega) + totally_real_count(k - 1, omega);
}

}  // namespace

mpz_class combinatorial_count(int k, FamilyKind kind, int omega1, int omega3) {
  check_exponent(k, kind);
  if (omega1 < 0 || omega3 < 0) throw Error(ErrorCode::domain, "combinatorial_count: negative omega");
  const int omega = omega1 + omega3;
  switch (kind) {
    case FamilyKind::R: return totally_real_count(k, omega);
    case FamilyKind::Q: return general_count(k, omega);
    // One sign per entry makes it = 1 mod 4.
    case FamilyKind::Q11: return totally_real_count(k, omega);
    case FamilyKind::Q31: return general_count(k, omega) - totally_real_count(k, omega);
    // a_1 carries the 2 and keeps a free sign; a_2..a_k are fixed = 1 mod 4.
    case FamilyKind::Q21: return 2 * totally_real_count(k, omega + 1);
    case FamilyKind::Q23: return general_count(k, omega + 1) - 2 * totally_real_count(k, omega + 1);
    case FamilyKind::R11: return count_normal_patterns(k, false, omega3, omega1, ParityConstraint::all_even);
    case FamilyKind::R31:
      return totally_real_count(k, omega) -
             count_normal_patterns(k, false, omega3, omega1, ParityConstraint::all_even);
    case FamilyKind::R21:
      return count_normal_patterns(k, true, omega3, omega1, ParityConstraint::all_even_but_first);
    case FamilyKind::R23:
      return totally_real_count(k, omega + 1) -
             count_normal_patterns(k, true, omega3, omega1, ParityConstraint::all_even_but_first);
  }
  return 0;
}

namespace {

// Exact least squares is not needed: the system must be consistent. Returns
// the unique solution or throws singular_system.
std::vector<mpq_class> solve_consistent(std::vector<std::vector<mpq_class>> rows,
                                        std::vector<mpq_class> rhs, const std::string& what) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pick = rank;
    while (pick < rows.size() && rows[pick][c] == 0) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[pick], rows[rank]);
    std::swap(rhs[pick], rhs[rank]);
    const mpq_class inv = 1 / rows[rank][c];
    for (std::size_t j = c; j < cols; ++j) rows[rank][j] *= inv;
    rhs[rank] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const mpq_class f = rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
      rhs[r] -= f * rhs[rank];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  if (rank < cols) {
    throw Error(ErrorCode::singular_system, what + ": basis is rank deficient (" + std::to_string(rank) +
                                                " of " + std::to_string(cols) + ")");
  }
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (rhs[r] != 0) throw Error(ErrorCode::singular_system, what + ": counts are not in the span of the basis");
  }
  std::vector<mpq_class> x(cols);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = rhs[r];
  return x;
}

ExpPoly fit_univariate(int k, int offset, const std::vector<int>& points,
                       const std::function<mpz_class(int)>& count, const std::string& what) {
  std::vector<std::int64_t> bases;
  for (int j = 1; j <= k; ++j) bases.push_back(mersenne(j));
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
  for (int w : points) {
    std::vector<mpq_class> row;
    for (std::int64_t b : bases) row.push_back(rational_pow(b, w + offset));
    rows.push_back(std::move(row));
    rhs.emplace_back(count(w));
  }
  const std::vector<mpq_class> coef = solve_consistent(std::move(rows), std::move(rhs), what);
  ExpPoly poly = ExpPoly::univariate(offset);
  for (std::size_t i = 0; i < bases.size(); ++i) poly.add_term(coef[i], bases[i]);
  return poly;
}

// (omega3 base, omega1 base) pairs of the bivariate basis.
std::vector<std::pair<std::int64_t, std::int64_t>> bivariate_basis(int k) {
  std::vector<std::pair<std::int64_t, std::int64_t>> basis;
  for (int j3 = 1; j3 <= k - 1; ++j3) {
    for (int j1 = j3; j1 <= k; ++j1) basis.emplace_back(mersenne(j3), mersenne(j1));
  }
  basis.emplace_back(mersenne(k), mersenne(k));
  for (int j1 = 1; j1 <= k; ++j1) basis.emplace_back(-1, mersenne(j1));
  return basis;
}

std::string family_name(int k, FamilyKind kind) {
  return std::string(to_string(kind)) + "_" + std::to_string(k);
}

}  // namespace

mpq_class CountFamily::leading_coefficient() const {
  const std::int64_t top = mersenne(k);
  const int target = is_even_radical_kind(kind) ? 0 : -1;
  if (poly.is_bivariate()) {
    return poly.coefficient(top, top) * rational_pow(top, poly.offset() + poly.offset1() - target);
  }
  return poly.coefficient(top) * rational_pow(top, poly.offset() - target);
}

mpq_class expected_leading_coefficient(int k, FamilyKind kind) {
  const mpq_class f = leading_factor(k);
  const mpq_class two_k(pow2(k));
  const mpq_class two_k1(pow2(k - 1));
  switch (kind) {
    case FamilyKind::R: return f;
    case FamilyKind::Q: return two_k * f;
    case FamilyKind::Q11: return f;
    case FamilyKind::Q31: return (two_k - 1) * f;
    case FamilyKind::Q21: return 2 * f;
    case FamilyKind::Q23: return (two_k - 2) * f;
    case FamilyKind::R11: return f / two_k;
    case FamilyKind::R31: return (two_k - 1) * f / two_k;
    case FamilyKind::R21: return f / two_k1;
    case FamilyKind::R23: return (two_k1 - 1) * f / two_k1;
  }
  return 0;
}

mpz_class eval_count(const CountFamily& family, int omega1, int omega3) {
  if (omega1 < 0 || omega3 < 0) throw Error(ErrorCode::domain, "eval_count: negative omega");
  const bool bivariate = family.poly.is_bivariate();
  const std::pair<int, int> point = bivariate ? std::pair{omega1, omega3} : std::pair{omega1 + omega3, 0};
  if (auto it = family.exceptions.find(point); it != family.exceptions.end()) return it->second;
  mpq_class v;
  if (bivariate && omega3 == 0 && family.omega3_zero) {
    v = family.omega3_zero->eval(omega1);
  } else {
    v = family.poly.eval(omega1, omega3);
  }
  if (v.get_den() != 1 || v < 0) {
    throw Error(ErrorCode::internal, family_name(family.k, family.kind) + " evaluated to " + v.get_str() +
                                         ", not a count");
  }
  return v.get_num();
}

mpz_class eval_count(const CountFamily& family, const SquarefreeProfile& P) {
  if (!P.is_squarefree) {
    throw Error(ErrorCode::domain, "eval_count: " + std::to_string(P.n) + " is not squarefree");
  }
  if (is_mod4_kind(family.kind)) {
    if (P.n % 2 == 0) {
      throw Error(ErrorCode::domain, "eval_count: " + std::string(to_string(family.kind)) +
                                         " takes the odd part P, got even " + std::to_string(P.n));
    }
    return eval_count(family, P.omega1, P.omega3);
  }
  return eval_count(family, P.omega, 0);
}

CountFamily derive_family(int k, FamilyKind kind) {
  check_exponent(k, kind);
  CountFamily family;
  family.k = k;
  family.kind = kind;
  const std::string what = family_name(k, kind);

  if (!is_bivariate_kind(kind)) {
    const int offset = is_even_radical_kind(kind) ? 0 : -1;
    std::vector<int> points;
    for (int w = 1; w <= k + 3; ++w) points.push_back(w);
    family.poly = fit_univariate(k, offset, points,
                                 [&](int w) { return combinatorial_count(k, kind, w, 0); }, what);
    const mpz_class at_zero = combinatorial_count(k, kind, 0, 0);
    if (family.poly.eval(0) != mpq_class(at_zero)) family.exceptions[{0, 0}] = at_zero;
    for (int w = 0; w <= 2 * k + 4; ++w) {
      if (eval_count(family, w, 0) != combinatorial_count(k, kind, w, 0)) {
        throw Error(ErrorCode::internal, what + ": derived formula fails at omega = " + std::to_string(w));
      }
    }
    return family;
  }

  const auto basis = bivariate_basis(k);
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
  for (int w3 = 1; w3 <= k + 2; ++w3) {
    for (int w1 = 0; w1 <= k + 1; ++w1) {
      std::vector<mpq_class> row;
      for (const auto& [b3, b1] : basis) row.push_back(rational_pow(b3, w3 - 1) * rational_pow(b1, w1));
      rows.push_back(std::move(row));
      rhs.emplace_back(combinatorial_count(k, kind, w1, w3));
    }
  }
  const std::vector<mpq_class> coef = solve_consistent(std::move(rows), std::move(rhs), what);
  family.poly = ExpPoly::bivariate(-1, 0);
  for (std::size_t i = 0; i < basis.size(); ++i) family.poly.add_term(coef[i], basis[i].first, basis[i].second);

  bool line_ok = true;
  for (int w1 = 1; w1 <= k + 4 && line_ok; ++w1) {
    line_ok = family.poly.eval(w1, 0) == mpq_class(combinatorial_count(k, kind, w1, 0));
  }
  if (!line_ok) {
    std::vector<int> points;
    for (int w1 = 1; w1 <= k + 3; ++w1) points.push_back(w1);
    family.omega3_zero = fit_univariate(
        k, 0, points, [&](int w1) { return combinatorial_count(k, kind, w1, 0); }, what + " on omega3 = 0");
  }
  const mpz_class at_origin = combinatorial_count(k, kind, 0, 0);
  const mpq_class origin_formula = family.omega3_zero ? family.omega3_zero->eval(0) : family.poly.eval(0, 0);
  if (origin_formula != mpq_class(at_origin)) family.exceptions[{0, 0}] = at_origin;

  for (int w3 = 0; w3 <= k + 4; ++w3) {
    for (int w1 = 0; w1 <= k + 3; ++w1) {
      if (eval_count(family, w1, w3) != combinatorial_count(k, kind, w1, w3)) {
        throw Error(ErrorCode::internal, what + ": derived formula fails at (omega1, omega3) = (" +
                                             std::to_string(w1) + ", " + std::to_string(w3) + ")");
      }
    }
  }
  return family;
}

const CountFamily& cached_family(int k, FamilyKind kind) {
  static std::mutex mutex;
  static std::map<std::pair<int, FamilyKind>, CountFamily> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({k, kind});
  if (it == cache.end()) it = cache.emplace(std::pair{k, kind}, derive_family(k, kind)).first;
  return it->second;
}

}  // namespace multiquad
