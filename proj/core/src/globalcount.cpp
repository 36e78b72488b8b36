#include "multiquad/globalcount.hpp"

#include <string>

namespace multiquad {

namespace {

// b^0, b^1, ... until the next power would leave 128 bits.
std::vector<i128> power_table(std::int64_t base) {
  std::vector<i128> t{1};
  while (t.size() < 128) {
    i128 next;
    if (__builtin_mul_overflow(t.back(), static_cast<i128>(base), &next)) break;
    t.push_back(next);
  }
  return t;
}

i128 lookup(const std::vector<i128>& table, int e) {
  if (e < 0 || static_cast<std::size_t>(e) >= table.size()) {
    throw Error(ErrorCode::overflow, "power exceeds 128 bits");
  }
  return table[static_cast<std::size_t>(e)];
}

void check_sum_range(std::uint64_t x) {
  if (x == 0) throw Error(ErrorCode::invalid_range, "sum bound x must be positive");
  if (x + 1 > global_sieve_bound()) {
    throw Error(ErrorCode::bound_exceeded, "x = " + std::to_string(x) + " exceeds sieve bound " +
                                               std::to_string(global_sieve_bound()));
  }
}

template <class Weight>
mpz_class odd_squarefree_sum(std::uint64_t x, const SieveOptions& opts, Weight weight) {
  check_sum_range(x);
  const auto partials = map_segments(1, x + 1, opts, [&](const FactorSieve& s) {
    i128 acc = 0;
    const std::uint64_t first = s.lo() | 1;
    for (std::uint64_t n = first; n < s.hi(); n += 2) {
      const std::size_t i = n - s.lo();
      if (!s.squarefree_at(i)) continue;
      acc = checked_add(acc, weight(s.omega1_at(i), s.omega3_at(i)));
    }
    return acc;
  });
  i128 total = 0;
  for (i128 p : partials) total = checked_add(total, p);
  return to_mpz(total);
}

}  // namespace

mpz_class sum_A(std::int64_t M, std::uint64_t x, const SieveOptions& opts) {
  if (M < 1) throw Error(ErrorCode::domain, "sum_A: need M >= 1");
  const std::vector<i128> pm = power_table(M);
  return odd_squarefree_sum(x, opts, [&](int w1, int w3) { return lookup(pm, w1 + w3); });
}

mpz_class sum_A_bivariate(std::int64_t M, std::int64_t N, std::uint64_t x, const SieveOptions& opts) {
  if (M < 1 || N < -1) throw Error(ErrorCode::domain, "sum_A_bivariate: need M >= 1 and N >= -1");
  const std::vector<i128> pm = power_table(M);
  const std::vector<i128> pn = power_table(N);
  return odd_squarefree_sum(x, opts, [&](int w1, int w3) {
    return checked_mul(lookup(pm, w1), lookup(pn, w3));
  });
}

FamilySum::FamilySum(const CountFamily& family) : family_(&family) {
  const bool bivariate = family.poly.is_bivariate();
  for (const ExpTerm& t : family.poly.terms()) {
    main_.push_back({t.coef, power_table(t.base), bivariate ? power_table(t.base1) : std::vector<i128>{1}, 0, 0,
                     t.base});
  }
  if (family.omega3_zero) {
    for (const ExpTerm& t : family.omega3_zero->terms()) line_.push_back({t.coef, {1}, power_table(t.base)});
  }
}

void FamilySum::add(int omega1, int omega3) {
  const CountFamily& f = *family_;
  const bool bivariate = f.poly.is_bivariate();
  if (!f.exceptions.empty()) {
    const std::pair<int, int> point = bivariate ? std::pair{omega1, omega3} : std::pair{omega1 + omega3, 0};
    if (auto it = f.exceptions.find(point); it != f.exceptions.end()) {
      side_ += it->second;
      return;
    }
  }
  if (bivariate && omega3 == 0 && f.omega3_zero) {
    const int e = omega1 + f.omega3_zero->offset();
    if (e < 0) {
      side_ += eval_count(f, omega1, omega3);
      return;
    }
    for (Slot& s : line_) s.sum = checked_add(s.sum, lookup(s.pow1, e));
    return;
  }
  if (bivariate) {
    const int e3 = omega3 + f.poly.offset();
    const int e1 = omega1 + f.poly.offset1();
    if (e3 == -1 && e1 >= 0) {
      for (Slot& s : main_) s.sum_inverse = checked_add(s.sum_inverse, lookup(s.pow1, e1));
      return;
    }
    if (e3 < 0 || e1 < 0) {
      side_ += eval_count(f, omega1, omega3);
      return;
    }
    for (Slot& s : main_) s.sum = checked_add(s.sum, checked_mul(lookup(s.pow3, e3), lookup(s.pow1, e1)));
    return;
  }
  const int e = omega1 + omega3 + f.poly.offset();
  if (e < 0) {
    side_ += eval_count(f, omega1, omega3);
    return;
  }
  for (Slot& s : main_) s.sum = checked_add(s.sum, lookup(s.pow3, e));
}

void FamilySum::merge(const FamilySum& other) {
  for (std::size_t i = 0; i < main_.size(); ++i) {
    main_[i].sum = checked_add(main_[i].sum, other.main_[i].sum);
    main_[i].sum_inverse = checked_add(main_[i].sum_inverse, other.main_[i].sum_inverse);
  }
  for (std::size_t i = 0; i < line_.size(); ++i) line_[i].sum = checked_add(line_[i].sum, other.line_[i].sum);
  side_ += other.side_;
}

mpz_class FamilySum::total() const {
  mpq_class t(side_);
  for (const Slot& s : main_) {
    t += s.coef * mpq_class(to_mpz(s.sum));
    if (s.sum_inverse != 0) t += s.coef * rational_pow(s.base3, -1) * mpq_class(to_mpz(s.sum_inverse));
  }
  for (const Slot& s : line_) t += s.coef * mpq_class(to_mpz(s.sum));
  t.canonicalize();
  if (t.get_den() != 1) throw Error(ErrorCode::internal, "FamilySum: non-integral total " + t.get_str());
  return t.get_num();
}

NkBreakdown count_N_breakdown(int k, const mpz_class& x, bool totally_real, const SieveOptions& opts) {
  if (k < 2 || k > kMaxDerivedExponent) {
    throw Error(ErrorCode::domain, "count_N: k must lie in [2, " + std::to_string(kMaxDerivedExponent) + "]");
  }
  if (x < 1) throw Error(ErrorCode::domain, "count_N: x must be positive");
  NkBreakdown out;
  out.k = k;
  out.totally_real = totally_real;
  out.x = x;
  const mpz_class root = integer_root(x, 1ul << (k - 1));
  if (root + 1 > mpz_class(std::to_string(global_sieve_bound()))) {
    throw Error(ErrorCode::bound_exceeded, "count_N: radical bound " + root.get_str() +
                                               " exceeds sieve bound " + std::to_string(global_sieve_bound()));
  }
  out.radical_bound = root.get_ui();
  for (std::size_t c = 0; c < 4; ++c) out.bounds[c] = out.radical_bound / kClassBoundDivisors[c];

  const std::array<FamilyKind, 4> kinds =
      totally_real ? std::array{FamilyKind::R11, FamilyKind::R31, FamilyKind::R21, FamilyKind::R23}
                   : std::array{FamilyKind::Q11, FamilyKind::Q31, FamilyKind::Q21, FamilyKind::Q23};
  std::array<const CountFamily*, 4> families{};
  for (std::size_t c = 0; c < 4; ++c) families[c] = &cached_family(k, kinds[c]);

  auto fresh = [&] {
    return std::array{FamilySum(*families[0]), FamilySum(*families[1]), FamilySum(*families[2]),
                      FamilySum(*families[3])};
  };
  auto sums = fresh();
  if (out.radical_bound >= 1) {
    const auto bounds = out.bounds;
    const auto partials = map_segments(1, out.radical_bound + 1, opts, [&](const FactorSieve& s) {
      auto local = fresh();
      for (std::uint64_t n = s.lo() | 1; n < s.hi(); n += 2) {
        const std::size_t i = n - s.lo();
        if (!s.squarefree_at(i)) continue;
        const int w1 = s.omega1_at(i), w3 = s.omega3_at(i);
        for (std::size_t c = 0; c < 4; ++c) {
          if (n <= bounds[c]) local[c].add(w1, w3);
        }
      }
      return local;
    });
    for (const auto& part : partials) {
      for (std::size_t c = 0; c < 4; ++c) sums[c].merge(part[c]);
    }
  }
  out.total = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    out.class_sums[c] = sums[c].total();
    out.total += out.class_sums[c];
  }
  return out;
}

mpz_class count_N(int k, const mpz_class& x, bool totally_real, const SieveOptions& opts) {
  return count_N_breakdown(k, x, totally_real, opts).total;
}

}  // namespace multiquad
