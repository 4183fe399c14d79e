#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "syr/trajectory.hpp"

#include <random>

using namespace syr;

namespace {

// independent stepper for oracle values (plain 128-bit, no shared code path)
u128 step_ref(u128 v) { return (v & 1) ? (3 * v + 1) >> 1 : v >> 1; }

struct RefProfile {
  u64 sigma;
  u128 t;
};

RefProfile iterate_ref(u64 n) {
  u128 cur = n, t = n;
  u64 k = 0;
  while (cur != 1) {
    cur = step_ref(cur);
    ++k;
    if (cur > t) t = cur;
  }
  return {k, t};
}

}  // namespace

TEST_CASE("t_step basic values") {
  CHECK(t_step(1) == 2);
  CHECK(t_step(27) == 41);
  CHECK(t_step(Nat(1) << 40) == Nat(1) << 39);
  CHECK_THROWS_AS(t_step(0), std::invalid_argument);
}

TEST_CASE("parity vectors of listed integers") {
  ParityVector v1 = parity_vector(1, 4);
  CHECK(v1.size() == 4);
  CHECK(v1.bit(0));
  CHECK_FALSE(v1.bit(1));
  CHECK(v1.bit(2));
  CHECK_FALSE(v1.bit(3));

  ParityVector v64 = parity_vector(64, 6);
  CHECK(v64.ones() == 0);
  ParityVector v63 = parity_vector(63, 6);
  CHECK(v63.ones() == 6);
  CHECK(v63.as_word() == 0x3f);
}

TEST_CASE("odd counts along the orbit of 27") {
  CHECK(odd_count(27, 74) == 43);
  CHECK(odd_count(27, 45) == 33);
  CHECK(odd_count(4, 6) == 2);
}

TEST_CASE("profile of small starts") {
  SUBCASE("n = 1 stays in the trivial cycle") {
    TrajectoryProfile p = profile(1);
    CHECK(p.sigma_inf == 0);
    CHECK(p.t == 2);
    CHECK(p.explored == 2);
    CHECK(p.odd_prefix == std::vector<u64>{1, 1});
    CHECK(p.odd_count_at(4) == 2);  // 1,2,1,2
  }
  SUBCASE("n = 27, frozen from direct iteration") {
    RefProfile ref = iterate_ref(27);
    CHECK(ref.sigma == 70);
    CHECK(ref.t == 4616);
    TrajectoryProfile p = profile(27);
    CHECK(p.sigma_inf == ref.sigma);
    CHECK(p.t == from_u128(ref.t));
    CHECK(p.odd_count_at(70) == 41);
    CHECK(p.odd_count_at(74) == 43);
  }
  SUBCASE("powers of two halve all the way") {
    TrajectoryProfile p = profile(1024);
    CHECK(p.sigma_inf == 10);
    CHECK(p.t == 1024);
  }
  SUBCASE("cap reached is a value, not an error") {
    TrajectoryProfile p = profile(27, 5);
    CHECK_FALSE(p.sigma_inf.has_value());
    CHECK(p.explored == 5);
    CHECK_FALSE(p.end_is_one);
  }
  CHECK_THROWS_AS(profile(27, 0), std::invalid_argument);
}

TEST_CASE("odd_prefix increments lie in {0,1}") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 200; ++it) {
    Nat n = rng() % 1000000 + 1;
    TrajectoryProfile p = profile(n);
    for (size_t i = 1; i < p.odd_prefix.size(); ++i) {
      u64 d = p.odd_prefix[i] - p.odd_prefix[i - 1];
      CHECK(d <= 1);
    }
    CHECK(p.t >= n);
  }
}

TEST_CASE("product identity, listed cases") {
  CHECK(eliahou_identity_check(1, 2));
  CHECK(eliahou_identity_check(4, 2));  // empty product
  CHECK(eliahou_identity_check(27, 70));
}

TEST_CASE("product identity, 1e4 random samples") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 10000; ++it) {
    Nat n = rng() % (u64{1} << 40) + 1;
    u64 j = rng() % 200 + 1;
    REQUIRE(eliahou_identity_check(n, j));
  }
}

TEST_CASE("coalescence: odd counts add along merged orbits") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 500; ++it) {
    Nat a = rng() % (u64{1} << 32) + 1;
    u64 k = rng() % 40 + 1;
    u64 j = rng() % 60 + 1;
    Nat b = a;
    for (u64 i = 0; i < k; ++i) b = t_step(b);
    CHECK(odd_count(a, k + j) == odd_count(a, k) + odd_count(b, j));
  }
}

TEST_CASE("fast path agrees with pure arbitrary precision on 1e5 samples") {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 100000; ++it) {
    Nat n = rng() % (u64{1} << 60) + 1;
    u64 j = rng() % 500 + 1;
    REQUIRE(parity_vector(n, j) == parity_vector_bignum(n, j));
    if (it % 20 == 0) {
      TrajectoryProfile a = profile(n);
      TrajectoryProfile b = profile_bignum(n);
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("promotion handles values beyond 128 bits") {
  Nat huge = (Nat(1) << 200) - 1;  // forces the bignum tier immediately
  ParityVector v = parity_vector(huge, 10);
  CHECK(v.ones() == 10);
  Nat big127 = (Nat(1) << 127) - 1;  // starts fast, promotes on the first odd step
  CHECK(parity_vector(big127, 64) == parity_vector_bignum(big127, 64));
}
