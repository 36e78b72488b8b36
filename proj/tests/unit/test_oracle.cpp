#include <doctest.h>

#include "brute.hpp"
#include "multiquad/oracle.hpp"

using namespace multiquad;

namespace {

std::set<std::vector<std::int64_t>> as_sets(const std::vector<FieldKey>& keys) {
  std::set<std::vector<std::int64_t>> out;
  for (const FieldKey& key : keys) out.insert(key.elements());
  return out;
}

const std::vector<FieldFilter>& all_filters() {
  static const std::vector<FieldFilter> filters = [] {
    std::vector<FieldFilter> f;
    for (int tr = 0; tr < 2; ++tr) {
      for (int ifree = 0; ifree < 2; ++ifree) {
        std::vector<std::optional<Mod4Class>> classes{std::nullopt, Mod4Class::c11, Mod4Class::c31,
                                                      Mod4Class::c21, Mod4Class::c23};
        for (const auto& c : classes) f.push_back(FieldFilter{ifree == 1, tr == 1, c});
      }
    }
    return f;
  }();
  return filters;
}

}  // namespace

TEST_CASE("enumerate_by_radical: examples") {
  const FieldFilter tr{.totally_real_only = true};
  CHECK(as_sets(enumerate_by_radical(15, 2, tr)) == std::set<std::vector<std::int64_t>>{{3, 5, 15}});
  CHECK(as_sets(enumerate_by_radical(105, 2, tr)) ==
        std::set<std::vector<std::int64_t>>{{3, 35, 105}, {5, 21, 105}, {7, 15, 105}, {15, 21, 35}});
  for (std::uint64_t P : {15u, 21u, 35u, 221u, 377u}) {
    CHECK(enumerate_by_radical(P, 2, {}).size() == 5);
  }
  CHECK(enumerate_by_radical(1, 2, {}).empty());
}

TEST_CASE("oracles A and B agree, and match the brute-force enumeration") {
  for (int k = 2; k <= 3; ++k) {
    for (std::uint64_t P = 1; P <= 2310; ++P) {
      if (!brute::squarefree(P)) continue;
      const std::size_t omega = brute::primes_of(P).size();
      if (omega > 5) continue;
      // Full brute force only where it is cheap.
      const bool small = omega <= 3;
      const auto all = small ? brute::fields_with_radical(P, k, false) : std::set<std::vector<std::int64_t>>{};
      for (const FieldFilter& f : all_filters()) {
        const auto a = as_sets(enumerate_by_radical(P, k, f, OracleMethod::normal_patterns));
        const auto b = as_sets(enumerate_by_radical(P, k, f, OracleMethod::subgroups));
        REQUIRE(a == b);
        for (const auto& key : b) {
          REQUIRE(brute::radical_of({key.begin(), key.end()}) == P);
        }
        if (small) {
          std::set<std::vector<std::int64_t>> expected;
          for (const auto& key : all) {
            const bool has_i = std::find(key.begin(), key.end(), -1) != key.end();
            const bool real = std::all_of(key.begin(), key.end(), [](std::int64_t d) { return d > 0; });
            if (f.i_free_only && has_i) continue;
            if (f.totally_real_only && !real) continue;
            if (f.mod4 && brute::mod4_class_of(key) != static_cast<int>(*f.mod4)) continue;
            expected.insert(key);
          }
          REQUIRE(b == expected);
        }
      }
    }
  }
}

TEST_CASE("general count splits as 2^k totally real plus one level down") {
  const FieldFilter tr{.totally_real_only = true};
  for (int k = 2; k <= 4; ++k) {
    for (std::uint64_t P : {3u, 15u, 105u, 1155u, 15015u, 6u, 30u, 210u, 2310u}) {
      const std::size_t q = enumerate_by_radical(P, k, {}).size();
      const std::size_t r = enumerate_by_radical(P, k, tr).size();
      const std::size_t r_down = enumerate_by_radical(P, k - 1, tr).size();
      CHECK(q == (std::size_t{1} << k) * r + r_down);
    }
  }
}

TEST_CASE("enumerate_by_discriminant: examples") {
  CHECK(enumerate_by_discriminant(143, 2, {}).empty());
  const auto up_to_256 = enumerate_by_discriminant(256, 2, {});
  REQUIRE(up_to_256.size() == 3);
  CHECK(up_to_256[0].discriminant == 144);
  CHECK(up_to_256[0].key.to_string() == "-3,-1,3");
  CHECK(up_to_256[1].discriminant == 225);
  CHECK(up_to_256[1].key.to_string() == "-15,-3,5");
  CHECK(up_to_256[2].discriminant == 256);
  CHECK(up_to_256[2].key.to_string() == "-2,-1,2");
  const auto real = enumerate_by_discriminant(1600, 2, {.totally_real_only = true});
  REQUIRE(real.size() == 1);
  CHECK(real[0].discriminant == 1600);
  CHECK(real[0].key.to_string() == "2,5,10");
}

TEST_CASE("enumerate_by_discriminant: methods agree and are sorted") {
  for (int k = 2; k <= 3; ++k) {
    const std::uint64_t x = k == 2 ? 200'000 : 100'000'000;
    const auto a = enumerate_by_discriminant(x, k, {}, OracleMethod::normal_patterns);
    const auto b = enumerate_by_discriminant(x, k, {}, OracleMethod::subgroups);
    CHECK(a == b);
    CHECK(std::is_sorted(b.begin(), b.end()));
    for (const auto& e : b) CHECK(e.discriminant <= x);
  }
}

TEST_CASE("oracle budgets") {
  CHECK_THROWS_AS(enumerate_by_radical(12, 2, {}), Error);
  CHECK_THROWS_AS(enumerate_by_discriminant(std::uint64_t{1} << 62, 2, {}), Error);
}
