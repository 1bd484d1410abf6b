// Tests for the exact numeric utilities: integer roots, rational powers,
// the deterministic seeded PRNG, fixed-point decimal formatting, and the
// FNV-1a digest. Everything here pins concrete values so any platform or
// library drift is caught immediately.

#include <doctest.h>

#include <cfcircle/numeric.hpp>

#include <set>
#include <string>

using namespace cfcircle;

TEST_CASE("isqrt_floor on exact squares and their neighbours") {
  CHECK(isqrt_floor(Int(0)) == 0);
  CHECK(isqrt_floor(Int(1)) == 1);
  CHECK(isqrt_floor(Int(2)) == 1);
  CHECK(isqrt_floor(Int(3)) == 1);
  CHECK(isqrt_floor(Int(4)) == 2);
  CHECK(isqrt_floor(Int(99)) == 9);
  CHECK(isqrt_floor(Int(100)) == 10);

  const Int big = ipow(Int(10), 40);
  CHECK(isqrt_floor(big) == ipow(Int(10), 20));
  CHECK(isqrt_floor(big - 1) == ipow(Int(10), 20) - 1);

  CHECK_THROWS_AS(isqrt_floor(Int(-1)), std::invalid_argument);
}

TEST_CASE("iroot_floor brackets the true root") {
  CHECK(iroot_floor(Int(26), 3) == 2);
  CHECK(iroot_floor(Int(27), 3) == 3);
  CHECK(iroot_floor(Int(28), 3) == 3);
  CHECK(iroot_floor(Int(0), 7) == 0);
  CHECK(iroot_floor(Int(1), 7) == 1);
  CHECK(iroot_floor(ipow(Int(2), 90), 9) == ipow(Int(2), 10));

  // Property: r^k <= x < (r+1)^k over seeded random inputs.
  for (unsigned k = 2; k <= 6; ++k) {
    for (std::uint64_t i = 0; i < 40; ++i) {
      Int x = Int(seeded_draw(900 + k, i));
      x = x * Int(seeded_draw(901 + k, i)) + Int(seeded_draw(902 + k, i));
      const Int r = iroot_floor(x, k);
      CHECK(ipow(r, k) <= x);
      CHECK(ipow(r + 1, k) > x);
    }
  }

  CHECK_THROWS_AS(iroot_floor(Int(5), 0), std::invalid_argument);
  CHECK_THROWS_AS(iroot_floor(Int(-5), 2), std::invalid_argument);
}

TEST_CASE("ipow_floor computes floor(i^(p/q)) exactly") {
  CHECK(ipow_floor(Int(2), Int(3), Int(2)) == 2);   // 2^1.5 = 2.83
  CHECK(ipow_floor(Int(5), Int(3), Int(2)) == 11);  // 5^1.5 = 11.18
  CHECK(ipow_floor(Int(10), Int(1), Int(2)) == 3);
  CHECK(ipow_floor(Int(7), Int(0), Int(1)) == 1);
  CHECK(ipow_floor(Int(9), Int(2), Int(1)) == 81);

  // floor(i^1.5) for i = 1..10 against hand-computed values.
  const long long expected[] = {1, 2, 5, 8, 11, 14, 18, 22, 27, 31};
  for (long long i = 1; i <= 10; ++i)
    CHECK(ipow_floor(Int(i), Int(3), Int(2)) == expected[i - 1]);

  CHECK_THROWS_AS(ipow_floor(Int(-1), Int(1), Int(2)), std::invalid_argument);
  CHECK_THROWS_AS(ipow_floor(Int(2), Int(1), Int(0)), std::invalid_argument);
  CHECK_THROWS_AS(ipow_floor(Int(2), Int(2'000'000), Int(1)),
                  std::invalid_argument);
}

TEST_CASE("splitmix64 and seeded_draw match the reference mixer") {
  CHECK(splitmix64(0) == 16294208416658607535ull);
  CHECK(splitmix64(1) == 10451216379200822465ull);
  CHECK(seeded_draw(42, 0) == 13679457532755275413ull);
  CHECK(seeded_draw(42, 1) == 2949826092126892291ull);
  CHECK(seeded_draw(42, 2) == 5139283748462763858ull);

  // Determinism and stream separation.
  CHECK(seeded_draw(7, 100) == seeded_draw(7, 100));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 64; ++i) seen.insert(seeded_draw(7, i));
  CHECK(seen.size() == 64);  // no collisions in a short prefix
}

TEST_CASE("fixed_decimal formats exactly with half-away rounding") {
  CHECK(fixed_decimal(Rat(1, 4), 2) == "0.25");
  CHECK(fixed_decimal(Rat(1, 3), 5) == "0.33333");
  CHECK(fixed_decimal(Rat(2, 3), 5) == "0.66667");
  CHECK(fixed_decimal(Rat(-1, 8), 2) == "-0.13");
  CHECK(fixed_decimal(Rat(5), 0) == "5");
  CHECK(fixed_decimal(Rat(-7, 2), 1) == "-3.5");
  CHECK(fixed_decimal(Rat(1, 2), 0) == "1");     // ties round away from zero
  CHECK(fixed_decimal(Rat(-1, 2), 0) == "-1");
  // A value that rounds to zero must not print a minus sign.
  CHECK(fixed_decimal(Rat(-1, 1000), 2) == "0.00");
  CHECK(fixed_decimal(Rat(123456789, 1), 3) == "123456789.000");
}

TEST_CASE("fnv1a_digest matches published FNV-1a 64-bit vectors") {
  CHECK(fnv1a_digest("") == "cbf29ce484222325");
  CHECK(fnv1a_digest("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_digest("abc") == "e71fa2190541574b");
  CHECK(fnv1a_digest("abc") != fnv1a_digest("abd"));
  CHECK(fnv1a_digest(std::string(1000, 'x')) ==
        fnv1a_digest(std::string(1000, 'x')));
}
