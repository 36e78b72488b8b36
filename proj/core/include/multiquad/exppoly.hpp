#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace multiquad {

// Exact power b^e as a rational; negative e allowed for b != 0.
mpq_class rational_pow(std::int64_t base, int exponent);

struct ExpTerm {
  mpq_class coef;
  std::int64_t base = 1;   // univariate base, or the omega3 base
  std::int64_t base1 = 1;  // omega1 base (bivariate only)

  bool operator==(const ExpTerm&) const = default;
};

// Exact linear combination of exponentials in the number of prime factors.
//
//   univariate:  sum c * base^(omega + offset)
//   bivariate:   sum c * base^(omega3 + offset) * base1^(omega1 + offset1)
//
// Terms are kept sorted by (base, base1) with distinct bases and nonzero
// coefficients, so structural equality is coefficient-wise equality.
class ExpPoly {
 public:
  static ExpPoly univariate(int offset);
  static ExpPoly bivariate(int offset3, int offset1);

  void add_term(const mpq_class& coef, std::int64_t base, std::int64_t base1 = 1);

  bool is_bivariate() const { return bivariate_; }
  int offset() const { return offset_; }
  int offset1() const { return offset1_; }
  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  mpq_class eval(int omega) const;
  mpq_class eval(int omega1, int omega3) const;

  mpq_class coefficient(std::int64_t base, std::int64_t base1 = 1) const;

  // Same function, rewritten on different exponent offsets.
  ExpPoly with_offsets(int offset, int offset1 = 0) const;
  // The function omega -> f(omega + delta).
  ExpPoly shifted(int delta) const;
  // Univariate f(omega) as the bivariate g(omega1, omega3) = f(omega1 + omega3).
  ExpPoly lifted() const;

  ExpPoly operator+(const ExpPoly& other) const;
  ExpPoly operator-(const ExpPoly& other) const;
  ExpPoly operator*(const mpq_class& scalar) const;

  // Exact equality; offsets are aligned first.
  bool same_function(const ExpPoly& other) const;
  bool operator==(const ExpPoly& other) const = default;

  // e.g. "2·(3)^(ω−1) − 1·(1)^(ω−1)"
  std::string to_text() const;
  // [{"coef_num":..,"coef_den":..,"base":..,"var":..,"offset":..}, ...]
  std::string to_json() const;

 private:
  ExpPoly(bool bivariate, int offset, int offset1)
      : bivariate_(bivariate), offset_(offset), offset1_(offset1) {}

  bool bivariate_ = false;
  int offset_ = 0;
  int offset1_ = 0;
  std::vector<ExpTerm> terms_;
};

}  // namespace multiquad
