// Closed intervals with exact rational endpoints, used to certify every
// irrational quantity in the library. All operations are outward-safe: the
// true value of an expression is always contained in the enclosure of the
// expression, with no rounding anywhere.

#pragma once

#include <cfcircle/numeric.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cfcircle {

/// Three-valued answer for comparisons against an interval.
enum class Ternary { yes, no, unknown };

struct Enclosure {
  Rat lo;
  Rat hi;

  Enclosure() : lo(0), hi(0) {}
  Enclosure(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo > hi) throw std::invalid_argument("Enclosure: lo > hi");
  }
  /// Degenerate (exact) interval.
  static Enclosure point(const Rat& v) { return Enclosure(v, v); }

  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }

  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  bool contains(const Enclosure& e) const { return lo <= e.lo && e.hi <= hi; }
  bool intersects(const Enclosure& e) const { return lo <= e.hi && e.lo <= hi; }

  /// Strictly below / above a rational threshold, three-valued.
  Ternary strictly_below(const Rat& t) const {
    if (hi < t) return Ternary::yes;
    if (lo >= t) return Ternary::no;
    return Ternary::unknown;
  }
  Ternary strictly_above(const Rat& t) const {
    if (lo > t) return Ternary::yes;
    if (hi <= t) return Ternary::no;
    return Ternary::unknown;
  }

  Enclosure operator+(const Enclosure& o) const {
    return Enclosure(lo + o.lo, hi + o.hi);
  }
  Enclosure operator-() const { return Enclosure(-hi, -lo); }
  Enclosure operator-(const Enclosure& o) const { return *this + (-o); }
  Enclosure operator+(const Rat& v) const { return Enclosure(lo + v, hi + v); }
  Enclosure operator-(const Rat& v) const { return Enclosure(lo - v, hi - v); }

  /// Scale by an exact rational (sign-aware endpoint swap).
  Enclosure scaled(const Rat& c) const {
    if (c >= 0) return Enclosure(lo * c, hi * c);
    return Enclosure(hi * c, lo * c);
  }

  /// Symmetric widening by a nonnegative slack.
  Enclosure widened(const Rat& slack) const {
    if (slack < 0) throw std::invalid_argument("Enclosure: negative widening");
    return Enclosure(lo - slack, hi + slack);
  }
};

/// Floor of an exact rational.
inline Int rat_floor(const Rat& x) {
  Int q = num(x) / den(x);
  if (num(x) < 0 && q * den(x) != num(x)) --q;
  return q;
}

/// Enclosure of the distance from the true value to the nearest integer
/// (the circle norm). The result is always a subset of [0, 1/2]; integer
/// shifts of the input leave it unchanged; degenerate inputs give exact
/// outputs. Wide inputs (width >= 1) collapse to [0, 1/2].
inline Enclosure circle_norm(const Enclosure& x) {
  const Rat half(1, 2);
  if (x.width() >= 1) return Enclosure(Rat(0), half);
  // Shift so the lower endpoint lies in [0, 1); the norm is shift-invariant.
  const Rat shift(rat_floor(x.lo));
  const Rat a = x.lo - shift;
  const Rat b = x.hi - shift;  // a in [0,1), b in [a, a+1) subset of [0,2)
  // Distance-to-nearest-integer is the tent map: t(x) = min over k of |x-k|.
  const auto tent = [&](const Rat& v) -> Rat {
    if (v <= 1) return std::min(v, Rat(1 - v));
    return std::min(Rat(v - 1), Rat(2 - v));
  };
  Rat lo = std::min(tent(a), tent(b));
  Rat hi = std::max(tent(a), tent(b));
  // Interior extrema at the breakpoints 1/2, 1, 3/2.
  for (int i = 1; i <= 3; ++i) {
    const Rat bp(i, 2);
    if (a < bp && bp < b) {
      lo = std::min(lo, tent(bp));
      hi = std::max(hi, tent(bp));
    }
  }
  return Enclosure(lo, hi);
}

inline const char* to_string(Ternary t) {
  switch (t) {
    case Ternary::yes: return "yes";
    case Ternary::no: return "no";
    default: return "unknown";
  }
}

}  // namespace cfcircle
