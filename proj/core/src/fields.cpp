#include "multiquad/fields.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <set>

#include "multiquad/arith.hpp"

namespace multiquad {

namespace {

std::uint64_t abs_u64(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty() && item.front() == '+') item.remove_prefix(1);
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw Error(ErrorCode::domain, "cannot parse integer list '" + std::string(text) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

// Adds g to the group `span` (excluding 1). Returns false if g is already in
// span + {1}, i.e. g is dependent.
bool extend_span(std::vector<std::int64_t>& span, std::int64_t g) {
  if (g == 1 || std::find(span.begin(), span.end(), g) != span.end()) return false;
  const std::size_t old = span.size();
  span.push_back(g);
  for (std::size_t i = 0; i < old; ++i) span.push_back(sqf_product(span[i], g));
  return true;
}

// Primes of |a_i| for each entry, plus their ascending union.
struct PrimeLayout {
  std::vector<std::vector<std::uint64_t>> per_entry;
  std::vector<std::uint64_t> all;
};

PrimeLayout prime_layout(const std::vector<std::int64_t>& entries) {
  PrimeLayout layout;
  std::set<std::uint64_t> all;
  for (std::int64_t a : entries) {
    layout.per_entry.push_back(prime_factors(abs_u64(a)));
    all.insert(layout.per_entry.back().begin(), layout.per_entry.back().end());
  }
  layout.all.assign(all.begin(), all.end());
  return layout;
}

bool divides(std::uint64_t p, std::int64_t a) { return abs_u64(a) % p == 0; }

}  // namespace

std::int64_t sqf_product(std::int64_t a, std::int64_t b) {
  const std::uint64_t g = std::gcd(abs_u64(a), abs_u64(b));
  const auto ga = static_cast<std::int64_t>(g);
  std::int64_t out;
  if (__builtin_mul_overflow(a / ga, b / ga, &out)) {
    throw Error(ErrorCode::overflow, "sqf_product: " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

int mod4(std::int64_t n) { return static_cast<int>(((n % 4) + 4) % 4); }

Presentation::Presentation(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorCode::domain, "presentation needs at least one entry");
  if (static_cast<int>(entries_.size()) > kMaxExponent) {
    throw Error(ErrorCode::domain, "presentation exponent k exceeds " + std::to_string(kMaxExponent));
  }
  for (std::int64_t a : entries_) {
    if (a == 0 || a == 1 || !is_squarefree(a)) {
      throw Error(ErrorCode::not_squarefree,
                  "presentation entry " + std::to_string(a) + " is not a squarefree integer != 0, 1");
    }
  }
  std::vector<std::int64_t> span;
  for (std::int64_t a : entries_) {
    if (!extend_span(span, a)) {
      throw Error(ErrorCode::independence_violation,
                  "presentation (" + join(entries_) + ") has degree < 2^k");
    }
  }
}

Presentation Presentation::parse(std::string_view text) { return Presentation(parse_int_list(text)); }

std::string Presentation::to_string() const { return join(entries_); }

FieldKey FieldKey::from_elements(std::span<const std::int64_t> elements) {
  std::vector<std::int64_t> span;
  int k = 0;
  for (std::int64_t d : elements) {
    if (d == 0 || !is_squarefree(d)) {
      throw Error(ErrorCode::not_squarefree, "key element " + std::to_string(d) + " is not squarefree");
    }
    if (extend_span(span, d)) ++k;
    if (k > kMaxExponent) throw Error(ErrorCode::domain, "key rank exceeds maximum exponent");
  }
  if (k == 0) throw Error(ErrorCode::domain, "empty key");
  std::sort(span.begin(), span.end());
  return FieldKey(std::move(span), k);
}

FieldKey FieldKey::parse(std::string_view text) {
  std::vector<std::int64_t> given = parse_int_list(text);
  FieldKey key = from_elements(given);
  std::sort(given.begin(), given.end());
  given.erase(std::unique(given.begin(), given.end()), given.end());
  if (given != key.elements_) {
    throw Error(ErrorCode::independence_violation,
                "'" + std::string(text) + "' is not closed under squarefree multiplication");
  }
  return key;
}

bool FieldKey::contains(std::int64_t d) const {
  return std::binary_search(elements_.begin(), elements_.end(), d);
}

std::uint64_t FieldKey::radical() const {
  std::uint64_t r = 1;
  for (std::int64_t d : elements_) {
    const std::uint64_t a = abs_u64(d);
    const std::uint64_t step = a / std::gcd(r, a);
    if (__builtin_mul_overflow(r, step, &r)) throw Error(ErrorCode::overflow, "key radical overflow");
  }
  return r;
}

std::string FieldKey::to_string() const { return join(elements_); }

std::string_view to_string(Mod4Class c) {
  switch (c) {
    case Mod4Class::c11: return "(1,1)";
    case Mod4Class::c31: return "(3,1)";
    case Mod4Class::c21: return "(2,1)";
    case Mod4Class::c23: return "(2,3)";
  }
  return "?";
}

Mod4Class parse_mod4_class(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != '(' && ch != ')' && ch != ',' && ch != ' ') s += ch;
  }
  if (s == "11") return Mod4Class::c11;
  if (s == "31") return Mod4Class::c31;
  if (s == "21") return Mod4Class::c21;
  if (s == "23") return Mod4Class::c23;
  throw Error(ErrorCode::domain, "unknown mod-4 class '" + std::string(text) + "'");
}

FieldKey field_key(const Presentation& p) {
  return FieldKey::from_elements(p.entries());
}

bool is_i_free(const FieldKey& key) { return !key.contains(-1); }

bool is_i_free(const Presentation& p) { return is_i_free(field_key(p)); }

Presentation normalize(const Presentation& p) {
  if (!is_i_free(p)) {
    throw Error(ErrorCode::not_i_free, "normalize: (" + p.to_string() + ") contains sqrt(-1)");
  }
  std::vector<std::int64_t> a = p.entries();
  const std::size_t k = a.size();
  for (std::size_t m = 0; m < k; ++m) {
    // Pivot: least prime dividing any not-yet-fixed entry.
    std::uint64_t pivot = 0;
    std::size_t owner = m;
    for (std::size_t j = m; j < k; ++j) {
      const auto primes = prime_factors(abs_u64(a[j]));
      if (primes.empty()) {
        throw Error(ErrorCode::independence_violation, "normalize: entry collapsed to a unit");
      }
      if (pivot == 0 || primes.front() < pivot) {
        pivot = primes.front();
        owner = j;
      }
    }
    std::swap(a[m], a[owner]);
    // Multiply the pivot entry onto every other entry sharing the pivot
    // prime, fixed ones included.
    for (std::size_t i = 0; i < k; ++i) {
      if (i != m && divides(pivot, a[i])) a[i] = sqf_product(a[i], a[m]);
    }
  }
  return Presentation(std::move(a));
}

bool is_normal(const Presentation& p) {
  const PrimeLayout layout = prime_layout(p.entries());
  const std::size_t k = p.entries().size();
  std::vector<std::size_t> first(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (layout.per_entry[j].empty()) return false;
    const auto it = std::lower_bound(layout.all.begin(), layout.all.end(), layout.per_entry[j].front());
    first[j] = static_cast<std::size_t>(it - layout.all.begin());
  }
  if (first[0] != 0) return false;
  for (std::size_t j = 1; j < k; ++j) {
    if (first[j] <= first[j - 1]) return false;
  }
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint64_t pivot = layout.all[first[j]];
    for (std::size_t i = 0; i < k; ++i) {
      if (i != j && divides(pivot, p[i])) return false;
    }
  }
  return true;
}

Mod4Class mod4_class(const FieldKey& key) {
  if (key.k() < 2) throw Error(ErrorCode::domain, "mod4_class: needs k >= 2");
  bool even_radical = false;
  bool all_odd_are_one = true;
  for (std::int64_t d : key.elements()) {
    const int r = mod4(d);
    if (r == 2) even_radical = true;
    else if (r == 3) all_odd_are_one = false;
  }
  if (even_radical) return all_odd_are_one ? Mod4Class::c21 : Mod4Class::c23;
  return all_odd_are_one ? Mod4Class::c11 : Mod4Class::c31;
}

int discriminant_two_power(Mod4Class c) {
  switch (c) {
    case Mod4Class::c11: return 0;
    case Mod4Class::c21:
    case Mod4Class::c31: return 2;
    case Mod4Class::c23: return 3;
  }
  return 0;
}

std::uint64_t discriminant(const FieldKey& key) {
  const int r = discriminant_two_power(mod4_class(key));
  std::uint64_t base = key.radical();
  if (__builtin_mul_overflow(base, std::uint64_t{1} << r, &base)) {
    throw Error(ErrorCode::overflow, "discriminant overflow");
  }
  std::uint64_t d = 1;
  const int e = 1 << (key.k() - 1);
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(d, base, &d)) {
      throw Error(ErrorCode::overflow, "discriminant of {" + key.to_string() + "} exceeds 64 bits");
    }
  }
  return d;
}

Presentation to_mod4_presentation(const FieldKey& key) {
  if (key.k() < 2) throw Error(ErrorCode::domain, "to_mod4_presentation: needs k >= 2");
  std::vector<std::int64_t> order = key.elements();
  std::stable_sort(order.begin(), order.end(), [](std::int64_t x, std::int64_t y) {
    const auto ax = abs_u64(x), ay = abs_u64(y);
    return ax != ay ? ax < ay : x > y;
  });
  const std::size_t k = static_cast<std::size_t>(key.k());
  std::vector<std::int64_t> chosen;

  auto allowed_at = [](std::size_t pos, std::int64_t d, std::int64_t first) {
    const int r = mod4(d);
    if (pos == 0) return r == 1 || r == 2 || r == 3;
    if (pos == 1) {
      const int r1 = mod4(first);
      return (r1 == 1 && r == 1) || (r1 == 2 && r == 1) || (r1 == 3 && r == 1) ||
             (r1 == 2 && r == 3);
    }
    return r == 1;
  };

  auto search = [&](auto&& self, std::vector<std::int64_t>& span) -> bool {
    if (chosen.size() == k) return true;
    for (std::int64_t d : order) {
      if (!allowed_at(chosen.size(), d, chosen.empty() ? 0 : chosen.front())) continue;
      std::vector<std::int64_t> next = span;
      if (!extend_span(next, d)) continue;
      chosen.push_back(d);
      if (self(self, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  std::vector<std::int64_t> span;
  if (!search(search, span)) {
    throw Error(ErrorCode::internal, "no mod-4 compliant basis for {" + key.to_string() + "}");
  }
  return Presentation(chosen);
}

}  // namespace multiquad
