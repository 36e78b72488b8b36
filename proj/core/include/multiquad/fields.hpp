#pragma once

// Presentations Q(sqrt a1, ..., sqrt ak) of multi-quadratic fields, their
// canonical identity (the group of squarefree subset products), the normal
// presentation of i-free fields, mod-4 classes and discriminants.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multiquad/errors.hpp"

namespace multiquad {

inline constexpr int kMaxExponent = 8;

// sqf(a * b) for squarefree a, b; throws overflow.
std::int64_t sqf_product(std::int64_t a, std::int64_t b);

// Arithmetic residue in {0, 1, 2, 3}; -1 -> 3, -3 -> 1.
int mod4(std::int64_t n);

class Presentation {
 public:
  // Validates: every entry squarefree, not 0 or 1, and the entries independent
  // (no nonempty subset multiplies to a square).
  explicit Presentation(std::vector<std::int64_t> entries);

  static Presentation parse(std::string_view text);

  int k() const { return static_cast<int>(entries_.size()); }
  const std::vector<std::int64_t>& entries() const { return entries_; }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }

  std::string to_string() const;

  bool operator==(const Presentation&) const = default;

 private:
  std::vector<std::int64_t> entries_;
};

class FieldKey {
 public:
  // Accepts any generating set of an elementary abelian 2-group of squarefree
  // integers (1 excluded); the key is the full set of 2^k - 1 elements.
  static FieldKey from_elements(std::span<const std::int64_t> elements);
  static FieldKey parse(std::string_view text);

  int k() const { return k_; }
  const std::vector<std::int64_t>& elements() const { return elements_; }
  bool contains(std::int64_t d) const;

  // lcm of the radicals of all elements = rad(a1 ... ak).
  std::uint64_t radical() const;

  std::string to_string() const;

  auto operator<=>(const FieldKey&) const = default;

 private:
  FieldKey(std::vector<std::int64_t> elements, int k) : elements_(std::move(elements)), k_(k) {}

  std::vector<std::int64_t> elements_;  // ascending
  int k_ = 0;
};

enum class Mod4Class { c11, c31, c21, c23 };

std::string_view to_string(Mod4Class c);
Mod4Class parse_mod4_class(std::string_view text);

FieldKey field_key(const Presentation& p);
bool is_i_free(const Presentation& p);
bool is_i_free(const FieldKey& key);

// Unique normal presentation of an i-free field, primes indexed ascending.
Presentation normalize(const Presentation& p);
bool is_normal(const Presentation& p);

Mod4Class mod4_class(const FieldKey& key);
// Exponent r of the 2-power in the discriminant for a class.
int discriminant_two_power(Mod4Class c);
std::uint64_t discriminant(const FieldKey& key);

// First ordered basis of the key (elements ordered by |d|, then d) whose
// residues satisfy (a1,a2) in {(1,1),(2,1),(3,1),(2,3)} and ai = 1 for i >= 3.
Presentation to_mod4_presentation(const FieldKey& key);

}  // namespace multiquad
