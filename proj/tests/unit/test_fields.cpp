#include <doctest.h>

#include <algorithm>
#include <random>

#include "brute.hpp"
#include "multiquad/fields.hpp"

using namespace multiquad;

namespace {

ErrorCode code_of(auto fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

std::vector<std::int64_t> key_of(std::vector<std::int64_t> gens) {
  return field_key(Presentation(std::move(gens))).elements();
}

// Every ordered basis of a key.
void ordered_bases(const std::vector<std::int64_t>& elements, int k, std::vector<std::int64_t>& cur,
                   std::vector<std::vector<std::int64_t>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  const auto span = brute::group_of(cur);
  for (std::int64_t d : elements) {
    if (span.count(d)) continue;
    cur.push_back(d);
    ordered_bases(elements, k, cur, out);
    cur.pop_back();
  }
}

std::vector<std::int64_t> primes_upto(int n) {
  std::vector<std::int64_t> p;
  for (int i = 2; i <= n; ++i) {
    if (brute::smallest_prime_factor(static_cast<std::uint64_t>(i)) == static_cast<std::uint64_t>(i)) p.push_back(i);
  }
  return p;
}

}  // namespace

TEST_CASE("field_key: examples") {
  CHECK(key_of({2, -3}) == std::vector<std::int64_t>{-6, -3, 2});
  CHECK(key_of({6, 10}) == std::vector<std::int64_t>{6, 10, 15});
  CHECK(key_of({2, -2}) == std::vector<std::int64_t>{-2, -1, 2});
  CHECK(code_of([] { Presentation({2, 8}); }) == ErrorCode::not_squarefree);
  CHECK(code_of([] { Presentation({2, 1}); }) == ErrorCode::not_squarefree);
  CHECK(code_of([] { Presentation({6, 10, 15}); }) == ErrorCode::independence_violation);
  CHECK(code_of([] { Presentation({3, 3}); }) == ErrorCode::independence_violation);
}

TEST_CASE("field_key: text form") {
  CHECK(field_key(Presentation::parse("2,-3")).to_string() == "-6,-3,2");
  CHECK(FieldKey::parse("-6,-3,2") == field_key(Presentation({2, -3})));
  CHECK(Presentation::parse("6,10").to_string() == "6,10");
  CHECK_THROWS_AS(FieldKey::parse("2,3"), Error);
}

TEST_CASE("is_i_free: examples") {
  CHECK(is_i_free(Presentation({2, -3})));
  CHECK_FALSE(is_i_free(Presentation({2, -2})));
  CHECK_FALSE(is_i_free(Presentation({-1, 5})));
}

TEST_CASE("normalize: examples") {
  CHECK(normalize(Presentation({2, 5})) == Presentation({2, 5}));
  CHECK(normalize(Presentation({6, 10})) == Presentation({10, 15}));
  CHECK(code_of([] { normalize(Presentation({-1, 3})); }) == ErrorCode::not_i_free);
}

TEST_CASE("is_normal: examples") {
  CHECK(is_normal(Presentation({10, 15})));
  CHECK_FALSE(is_normal(Presentation({6, 15})));
  CHECK_FALSE(is_normal(Presentation({15, 2})));
}

TEST_CASE("mod4_class: examples") {
  CHECK(mod4_class(FieldKey::parse("-15,-3,5")) == Mod4Class::c11);
  CHECK(mod4_class(FieldKey::parse("-3,-1,3")) == Mod4Class::c31);
  CHECK(mod4_class(FieldKey::parse("-2,-1,2")) == Mod4Class::c23);
  CHECK(mod4_class(FieldKey::parse("2,5,10")) == Mod4Class::c21);
}

TEST_CASE("discriminant: examples") {
  CHECK(discriminant(FieldKey::parse("-3,-1,3")) == 144);
  CHECK(discriminant(FieldKey::parse("-2,-1,2")) == 256);
  CHECK(discriminant(FieldKey::parse("5,13,65")) == 4225);
  CHECK(discriminant(FieldKey::parse("2,5,10")) == 1600);
}

TEST_CASE("to_mod4_presentation: examples") {
  CHECK(to_mod4_presentation(FieldKey::parse("-3,-1,3")) == Presentation({-1, -3}));
  CHECK(to_mod4_presentation(FieldKey::parse("5,13,65")) == Presentation({5, 13}));
  CHECK(to_mod4_presentation(FieldKey::parse("-2,-1,2")) == Presentation({2, -1}));
}

TEST_CASE("normalize: idempotent, sound, and unique over all bases") {
  // Every i-free key for k in {2,3} over radicals built from the first primes,
  // reached through every ordered basis.
  const std::vector<std::int64_t> primes = primes_upto(13);
  std::size_t checked = 0;
  for (int k = 2; k <= 3; ++k) {
    for (std::uint64_t mask = 1; mask < (1u << primes.size()); ++mask) {
      std::uint64_t P = 1;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        if (mask >> i & 1) P *= static_cast<std::uint64_t>(primes[i]);
      }
      if (std::popcount(mask) > (k == 2 ? 6 : 4)) continue;
      for (const auto& elements : brute::fields_with_radical(P, k, false)) {
        if (std::find(elements.begin(), elements.end(), -1) != elements.end()) continue;
        std::vector<std::vector<std::int64_t>> bases;
        std::vector<std::int64_t> cur;
        ordered_bases(elements, k, cur, bases);
        REQUIRE(bases.size() > 0);
        const Presentation first = normalize(Presentation(bases.front()));
        REQUIRE(is_normal(first));
        REQUIRE(field_key(first).elements() == elements);
        REQUIRE(normalize(first) == first);
        for (const auto& b : bases) REQUIRE(normalize(Presentation(b)) == first);
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("discriminant depends on the key alone") {
  for (std::uint64_t P : {6u, 15u, 30u, 105u, 210u}) {
    for (const auto& elements : brute::fields_with_radical(P, 2, false)) {
      const FieldKey key = FieldKey::from_elements(elements);
      const std::uint64_t D = discriminant(key);
      std::vector<std::vector<std::int64_t>> bases;
      std::vector<std::int64_t> cur;
      ordered_bases(elements, 2, cur, bases);
      for (const auto& b : bases) {
        const int r0 = brute::residue4(b[0]), r1 = brute::residue4(b[1]);
        const bool compliant = (r0 == 1 && r1 == 1) || (r0 == 2 && r1 == 1) || (r0 == 3 && r1 == 1) ||
                               (r0 == 2 && r1 == 3);
        if (!compliant) continue;
        // Compliant bases reproduce D from their own residues.
        const int r = r0 == 1 ? 0 : (r0 == 3 || r1 == 1) ? 2 : 3;
        const std::uint64_t base = (std::uint64_t{1} << r) * brute::radical_of({b[0], b[1]});
        CHECK(D == base * base);
      }
    }
  }
}

TEST_CASE("mod4_class agrees with the compliant presentation on random keys") {
  std::mt19937_64 rng(11);
  const std::vector<std::int64_t> pool{-1, 2, 3, 5, 7, 11, 13, 17, 19, 23};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> pick_k(2, 3);
  int done = 0;
  while (done < 10'000) {
    const int k = pick_k(rng);
    std::vector<std::int64_t> gens;
    for (int i = 0; i < k; ++i) {
      std::int64_t g = 1;
      const int factors = 1 + static_cast<int>(pick(rng) % 3);
      for (int f = 0; f < factors; ++f) g = brute::sqf_mul(g, pool[pick(rng)]);
      gens.push_back(g);
    }
    if (std::find(gens.begin(), gens.end(), 1) != gens.end()) continue;
    if (static_cast<int>(brute::group_of(gens).size()) != (1 << k) - 1) continue;
    const FieldKey key = field_key(Presentation(gens));
    const Presentation p = to_mod4_presentation(key);
    REQUIRE(field_key(p) == key);
    const int r0 = brute::residue4(p[0]), r1 = brute::residue4(p[1]);
    for (int i = 2; i < p.k(); ++i) REQUIRE(brute::residue4(p[static_cast<std::size_t>(i)]) == 1);
    const Mod4Class c = mod4_class(key);
    const Mod4Class from_pair = r0 == 1 ? Mod4Class::c11 : r0 == 3 ? Mod4Class::c31 : r1 == 1 ? Mod4Class::c21 : Mod4Class::c23;
    REQUIRE(c == from_pair);
    REQUIRE(static_cast<int>(c) == brute::mod4_class_of(key.elements()));
    ++done;
  }
}
