// Arbitrary-precision integer/rational aliases plus the small numeric
// utilities the rest of the library leans on: integer roots, deterministic
// seeded hashing, fixed-point decimal formatting, and a stable digest.
//
// Everything here is exact; no floating point is used anywhere in the
// library's value computations.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfcircle {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

/// Floor of the integer square root; requires x >= 0.
inline Int isqrt_floor(const Int& x) {
  if (x < 0) throw std::invalid_argument("isqrt_floor: negative argument");
  return boost::multiprecision::sqrt(x);
}

/// x^e for a nonnegative machine exponent.
inline Int ipow(const Int& x, unsigned e) {
  return boost::multiprecision::pow(x, e);
}

/// Floor of the k-th root of x (x >= 0, k >= 1), by Newton iteration with an
/// exact fix-up step, so the result r satisfies r^k <= x < (r+1)^k.
inline Int iroot_floor(const Int& x, unsigned k) {
  if (x < 0) throw std::invalid_argument("iroot_floor: negative argument");
  if (k == 0) throw std::invalid_argument("iroot_floor: zeroth root");
  if (k == 1 || x <= 1) return x;
  // Initial guess from the bit length: 2^ceil(bits/k) >= x^(1/k).
  const unsigned bits = boost::multiprecision::msb(x) + 1;
  Int r = Int(1) << ((bits + k - 1) / k);
  while (true) {
    // Newton step for r^k = x, staying above the root until convergence.
    Int next = ((k - 1) * r + x / ipow(r, k - 1)) / k;
    if (next >= r) break;
    r = next;
  }
  while (ipow(r, k) > x) --r;
  while (ipow(r + 1, k) <= x) ++r;
  return r;
}

/// Floor of i^(p/q) for rational exponents, exactly: iroot_floor(i^p, q).
inline Int ipow_floor(const Int& i, const Int& p, const Int& q) {
  if (i < 0 || p < 0 || q <= 0)
    throw std::invalid_argument("ipow_floor: arguments out of range");
  if (p > 1'000'000 || q > 1'000'000)
    throw std::invalid_argument("ipow_floor: exponent too large");
  return iroot_floor(boost::multiprecision::pow(i, static_cast<unsigned>(p)),
                     static_cast<unsigned>(q));
}

/// splitmix64: the standard 64-bit finalizing mixer. Used as a stateless,
/// platform-independent PRNG: hash of (seed, index) gives the index-th draw.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic draw number `index` of the stream identified by `seed`.
inline std::uint64_t seeded_draw(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + index * 0x9E3779B97F4A7C15ull);
}

/// Formats a rational as a fixed-point decimal string with `digits` places,
/// rounding half away from zero. Pure integer arithmetic, so the output is
/// identical across platforms.
inline std::string fixed_decimal(const Rat& x, unsigned digits) {
  const bool neg = x < 0;
  const Int scale = ipow(Int(10), digits);
  Int n = num(x) * scale;
  if (neg) n = -n;
  const Int d = den(x);
  Int q = n / d;
  const Int r = n % d;
  if (2 * r >= d) ++q;
  const Int whole = q / scale;
  Int frac = q % scale;
  std::string frac_str = frac.str();
  if (frac_str.size() < digits)
    frac_str.insert(0, digits - frac_str.size(), '0');
  std::string out;
  if (neg && (whole != 0 || frac != 0)) out += '-';
  out += whole.str();
  if (digits > 0) {
    out += '.';
    out += frac_str;
  }
  return out;
}

/// FNV-1a 64-bit digest, rendered as 16 hex characters. Used to fingerprint
/// run configurations and digit-stream descriptors in serialized reports.
inline std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace cfcircle
