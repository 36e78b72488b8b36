#include "multiquad/exppoly.hpp"

#include <algorithm>
#include <sstream>

#include "multiquad/errors.hpp"

namespace multiquad {

mpq_class rational_pow(std::int64_t base, int exponent) {
  if (exponent == 0) return 1;
  if (base == 0 && exponent < 0) throw Error(ErrorCode::domain, "rational_pow: 0^e with e < 0");
  mpz_class b(std::to_string(base));
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return mpq_class(p);
  mpq_class q(mpz_class(1), p);
  q.canonicalize();
  return q;
}

ExpPoly ExpPoly::univariate(int offset) { return ExpPoly(false, offset, 0); }

ExpPoly ExpPoly::bivariate(int offset3, int offset1) { return ExpPoly(true, offset3, offset1); }

void ExpPoly::add_term(const mpq_class& coef, std::int64_t base, std::int64_t base1) {
  if (base == 0 || base1 == 0) throw Error(ErrorCode::domain, "ExpPoly: zero base");
  if (!bivariate_ && base1 != 1) throw Error(ErrorCode::domain, "ExpPoly: base1 on a univariate poly");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{base, base1},
                             [](const ExpTerm& t, const std::pair<std::int64_t, std::int64_t>& key) {
                               return std::pair{t.base, t.base1} < key;
                             });
  if (it != terms_.end() && it->base == base && it->base1 == base1) {
    it->coef += coef;
    if (it->coef == 0) terms_.erase(it);
    return;
  }
  if (coef == 0) return;
  terms_.insert(it, ExpTerm{coef, base, base1});
}

mpq_class ExpPoly::eval(int omega) const {
  if (bivariate_) throw Error(ErrorCode::domain, "ExpPoly::eval(omega) on a bivariate poly");
  mpq_class sum = 0;
  for (const ExpTerm& t : terms_) sum += t.coef * rational_pow(t.base, omega + offset_);
  return sum;
}

mpq_class ExpPoly::eval(int omega1, int omega3) const {
  if (!bivariate_) return eval(omega1 + omega3);
  mpq_class sum = 0;
  for (const ExpTerm& t : terms_) {
    sum += t.coef * rational_pow(t.base, omega3 + offset_) * rational_pow(t.base1, omega1 + offset1_);
  }
  return sum;
}

mpq_class ExpPoly::coefficient(std::int64_t base, std::int64_t base1) const {
  for (const ExpTerm& t : terms_) {
    if (t.base == base && t.base1 == base1) return t.coef;
  }
  return 0;
}

ExpPoly ExpPoly::with_offsets(int offset, int offset1) const {
  ExpPoly out(bivariate_, offset, bivariate_ ? offset1 : 0);
  for (const ExpTerm& t : terms_) {
    mpq_class c = t.coef * rational_pow(t.base, offset_ - offset);
    if (bivariate_) c *= rational_pow(t.base1, offset1_ - offset1);
    out.add_term(c, t.base, t.base1);
  }
  return out;
}

ExpPoly ExpPoly::shifted(int delta) const {
  if (bivariate_) throw Error(ErrorCode::domain, "ExpPoly::shifted on a bivariate poly");
  ExpPoly out = *this;
  out.offset_ += delta;
  return out;
}

ExpPoly ExpPoly::lifted() const {
  if (bivariate_) return *this;
  ExpPoly out(true, offset_, 0);
  for (const ExpTerm& t : terms_) out.add_term(t.coef, t.base, t.base);
  return out;
}

ExpPoly ExpPoly::operator+(const ExpPoly& other) const {
  ExpPoly lhs = (other.bivariate_ && !bivariate_) ? lifted() : *this;
  const ExpPoly rhs = (lhs.bivariate_ && !other.bivariate_) ? other.lifted() : other;
  const ExpPoly aligned = rhs.with_offsets(lhs.offset_, lhs.offset1_);
  for (const ExpTerm& t : aligned.terms_) lhs.add_term(t.coef, t.base, t.base1);
  return lhs;
}

ExpPoly ExpPoly::operator-(const ExpPoly& other) const { return *this + other * mpq_class(-1); }

ExpPoly ExpPoly::operator*(const mpq_class& scalar) const {
  ExpPoly out(bivariate_, offset_, offset1_);
  for (const ExpTerm& t : terms_) out.add_term(t.coef * scalar, t.base, t.base1);
  return out;
}

bool ExpPoly::same_function(const ExpPoly& other) const {
  const ExpPoly diff = *this - other;
  return diff.terms_.empty();
}

namespace {

std::string exponent_text(const char* var, int offset) {
  std::string s = var;
  if (offset > 0) s += "+" + std::to_string(offset);
  if (offset < 0) s += "−" + std::to_string(-offset);
  return s;
}

}  // namespace

std::string ExpPoly::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const bool negative = it->coef < 0;
    if (first) {
      if (negative) out << "−";
    } else {
      out << (negative ? " − " : " + ");
    }
    first = false;
    out << mpq_class(abs(it->coef)).get_str() << "·";
    if (bivariate_) {
      out << "(" << it->base << ")^(" << exponent_text("ω₃", offset_) << ")·("
          << it->base1 << ")^(" << exponent_text("ω₁", offset1_) << ")";
    } else {
      out << "(" << it->base << ")^(" << exponent_text("ω", offset_) << ")";
    }
  }
  return out.str();
}

std::string ExpPoly::to_json() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const ExpTerm& t = terms_[i];
    if (i) out << ",";
    out << "{\"coef_num\":\"" << t.coef.get_num().get_str() << "\",\"coef_den\":\""
        << t.coef.get_den().get_str() << "\",\"base\":" << t.base << ",\"var\":\""
        << (bivariate_ ? "omega3" : "omega") << "\",\"offset\":" << offset_;
    if (bivariate_) {
      out << ",\"base1\":" << t.base1 << ",\"var1\":\"omega1\",\"offset1\":" << offset1_;
    }
    out << "}";
  }
  out << "]";
  return out.str();
}

}  // namespace multiquad
