// Tests for exact rational interval arithmetic and the distance-to-nearest-
// integer map over intervals: endpoint handling, the fold at half-integers,
// shift invariance, and the ternary threshold comparisons that all series
// classification rests on.

#include <doctest.h>

#include <cfcircle/enclosure.hpp>
#include <cfcircle/numeric.hpp>

using namespace cfcircle;

TEST_CASE("Enclosure construction and basic queries") {
  const Enclosure e(Rat(1, 4), Rat(1, 2));
  CHECK(e.width() == Rat(1, 4));
  CHECK(e.midpoint() == Rat(3, 8));
  CHECK_FALSE(e.is_point());
  CHECK(Enclosure::point(Rat(7)).is_point());
  CHECK_THROWS_AS(Enclosure(Rat(1), Rat(0)), std::invalid_argument);

  CHECK(e.contains(Rat(1, 4)));
  CHECK(e.contains(Rat(1, 2)));
  CHECK_FALSE(e.contains(Rat(0)));
  CHECK(e.contains(Enclosure(Rat(1, 3), Rat(2, 5))));
  CHECK_FALSE(e.contains(Enclosure(Rat(0), Rat(1, 3))));
  CHECK(e.intersects(Enclosure(Rat(1, 2), Rat(1))));  // shared endpoint
  CHECK_FALSE(e.intersects(Enclosure(Rat(3, 5), Rat(1))));
}

TEST_CASE("Enclosure arithmetic is sign-aware") {
  const Enclosure e(Rat(-1, 2), Rat(1, 3));
  const Enclosure s = e.scaled(Rat(-2));
  CHECK(s.lo == Rat(-2, 3));
  CHECK(s.hi == Rat(1));

  const Enclosure sum = e + Enclosure(Rat(1), Rat(2));
  CHECK(sum.lo == Rat(1, 2));
  CHECK(sum.hi == Rat(7, 3));

  const Enclosure neg = -e;
  CHECK(neg.lo == Rat(-1, 3));
  CHECK(neg.hi == Rat(1, 2));

  const Enclosure w = e.widened(Rat(1, 6));
  CHECK(w.lo == Rat(-2, 3));
  CHECK(w.hi == Rat(1, 2));
  CHECK_THROWS_AS(e.widened(Rat(-1)), std::invalid_argument);
}

TEST_CASE("rat_floor rounds toward minus infinity") {
  CHECK(rat_floor(Rat(7, 2)) == 3);
  CHECK(rat_floor(Rat(-7, 2)) == -4);
  CHECK(rat_floor(Rat(4)) == 4);
  CHECK(rat_floor(Rat(-4)) == -4);
  CHECK(rat_floor(Rat(0)) == 0);
  CHECK(rat_floor(Rat(1, 1000)) == 0);
  CHECK(rat_floor(Rat(-1, 1000)) == -1);
}

TEST_CASE("circle_norm on intervals away from the fold") {
  const Enclosure e = circle_norm(Enclosure(Rat(12, 5), Rat(49, 20)));
  CHECK(e.lo == Rat(2, 5));   // ||2.4|| = 0.4
  CHECK(e.hi == Rat(9, 20));  // ||2.45|| = 0.45
}

TEST_CASE("circle_norm at and across the breakpoints") {
  // A point at the fold stays there.
  const Enclosure half = circle_norm(Enclosure::point(Rat(1, 2)));
  CHECK(half.lo == Rat(1, 2));
  CHECK(half.hi == Rat(1, 2));

  // An interval straddling an integer folds down to zero.
  const Enclosure astride = circle_norm(Enclosure(Rat(-1, 10), Rat(1, 10)));
  CHECK(astride.lo == Rat(0));
  CHECK(astride.hi == Rat(1, 10));

  // An interval straddling a half-integer peaks at 1/2.
  const Enclosure peak = circle_norm(Enclosure(Rat(3, 10), Rat(4, 5)));
  CHECK(peak.lo == Rat(1, 5));  // min(0.3, 1 - 0.8)
  CHECK(peak.hi == Rat(1, 2));

  // Width >= 1 collapses to the full range.
  const Enclosure wide = circle_norm(Enclosure(Rat(0), Rat(3)));
  CHECK(wide.lo == Rat(0));
  CHECK(wide.hi == Rat(1, 2));
}

TEST_CASE("circle_norm is invariant under integer shifts and negation") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    // Seeded rational interval inside (-4, 4).
    const long long a =
        static_cast<long long>(seeded_draw(11, i) % 8000) - 4000;
    const long long w = static_cast<long long>(seeded_draw(12, i) % 900);
    const Enclosure e(Rat(a, 1000), Rat(a + static_cast<long long>(w), 1000));
    const Enclosure base = circle_norm(e);
    for (long long shift : {-3LL, 1LL, 7LL}) {
      const Enclosure moved = circle_norm(e + Rat(shift));
      CHECK(moved.lo == base.lo);
      CHECK(moved.hi == base.hi);
    }
    const Enclosure negated = circle_norm(-e);
    CHECK(negated.lo == base.lo);
    CHECK(negated.hi == base.hi);
    // The result always lies in [0, 1/2].
    CHECK(base.lo >= 0);
    CHECK(base.hi <= Rat(1, 2));
  }
}

TEST_CASE("circle_norm contains the pointwise norm of every rational inside") {
  // Spot-check the interval extension against exact pointwise values.
  const Enclosure e(Rat(17, 10), Rat(23, 10));
  const Enclosure n = circle_norm(e);
  for (long long k = 0; k <= 60; ++k) {
    const Rat v = Rat(17, 10) + Rat(k, 100);
    const Rat dist_lo = v - Rat(rat_floor(v));
    const Rat pointwise = dist_lo <= Rat(1, 2) ? dist_lo : Rat(1) - dist_lo;
    CHECK(n.contains(pointwise));
  }
}

TEST_CASE("ternary threshold comparisons") {
  const Enclosure e(Rat(1, 4), Rat(1, 3));
  CHECK(e.strictly_below(Rat(1, 2)) == Ternary::yes);
  CHECK(e.strictly_below(Rat(1, 4)) == Ternary::no);
  CHECK(e.strictly_below(Rat(3, 10)) == Ternary::unknown);
  CHECK(e.strictly_above(Rat(1, 5)) == Ternary::yes);
  CHECK(e.strictly_above(Rat(1, 3)) == Ternary::no);
  CHECK(e.strictly_above(Rat(3, 10)) == Ternary::unknown);
  CHECK(std::string(to_string(Ternary::yes)) == "yes");
  CHECK(std::string(to_string(Ternary::unknown)) == "unknown");
}
