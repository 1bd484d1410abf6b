// Digit numeration with respect to a continued fraction: every beta in the
// open interval (-alpha, 1-alpha) has a unique expansion
//
//     beta = sum_k d_k * theta_k,   theta_k = q_k*alpha - p_k,
//
// under the digit constraints
//     0 <= d_0 < a_1,   0 <= d_k <= a_{k+1},
//     d_k = a_{k+1}  =>  d_{k-1} = 0,
//     and even-indexed digits stay below their caps infinitely often.
//
// This header provides the digit-stream value type plus validation, exact
// greedy encoding, and rigorous decoding back to an enclosure.

#pragma once

#include <cfcircle/cf.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cfcircle {

/// One (index, digit) support point of a sparse stream.
struct SupportPoint {
  long long index;
  long long digit;
};

/// Digit stream (d_k), k >= 0, tied to the digit stream of its alpha.
/// Two kinds: explicit finite lists (digits past the end are zero), and
/// sparse support streams produced by a generator of strictly increasing
/// support points (possibly infinite).
class OstrowskiDigits {
 public:
  /// Finite list d_0..d_{len-1}; all later digits are zero by definition.
  static OstrowskiDigits from_list(std::vector<long long> digits,
                                   CFDigits alpha, std::string name);
  /// The zero element.
  static OstrowskiDigits zero(CFDigits alpha);
  /// Sparse stream: generator(i) yields the i-th support point (0-based,
  /// strictly increasing indices) or nullopt when the support is finite and
  /// exhausted. `even_caps_declared` records the stream-level promise that
  /// even-indexed digits stay below their caps infinitely often.
  static OstrowskiDigits from_support(
      std::function<std::optional<SupportPoint>(long long)> generator,
      CFDigits alpha, std::string name, bool even_caps_declared = true);

  /// Digit d_k, k >= 0.
  long long at(long long k) const;

  /// Sorted support indices k <= depth with d_k != 0.
  std::vector<long long> support(long long depth) const;
  /// Support points with lo <= k <= hi, in increasing order.
  std::vector<SupportPoint> support_in(long long lo, long long hi) const;

  /// True when every digit past `k` is known to be zero.
  bool zero_beyond(long long k) const;

  const CFDigits& alpha() const;
  const std::string& name() const;
  bool even_caps_declared() const;
  std::string descriptor() const;

 private:
  struct Impl;
  explicit OstrowskiDigits(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

/// Outcome of digit validation.
struct ValidationResult {
  bool ok = true;
  long long violation_index = -1;
  std::string rule;  // "range" or "carry" when !ok
  // Number of even indices k <= depth with d_k < cap; finite-prefix evidence
  // for the stream-level "infinitely often" condition (never a proof).
  long long unsaturated_even_count = 0;
};

/// Checks the digit constraints on indices 0..depth; reports the first
/// violation (range rule before carry rule at equal index).
ValidationResult validate(const ContinuedFraction& cf,
                          const OstrowskiDigits& d, long long depth);

/// The exact linear form of the head sum  sum_{k <= K} d_k theta_k.
LinearForm decode_head_form(const ContinuedFraction& cf,
                            const OstrowskiDigits& d, long long K);

/// Rigorous bound for |sum_{k > K} d_k theta_k| over any valid digit tail:
/// zero when the stream is known zero past K, else the telescoped bound
/// |theta_K| + |theta_{K+1}| evaluated with the exact upper brackets.
Rat decode_tail_bound(const ContinuedFraction& cf, const OstrowskiDigits& d,
                      long long K);

/// Enclosure of beta from the digits: head refined to target_width, then
/// widened by the tail bound (total width <= target_width + 2*tail bound).
Enclosure decode(const ContinuedFraction& cf, const OstrowskiDigits& d,
                 long long K, const Rat& target_width);

/// First K+1 digits (d_0..d_K) of the unique expansion of the exact value
/// beta = c*alpha + e, extracted greedily with exact sign decisions.
/// Precondition (checked): -alpha < beta < 1 - alpha.
std::vector<long long> encode_form(const ContinuedFraction& cf,
                                   const LinearForm& beta, long long K);

/// Rational-input convenience wrapper around encode_form.
OstrowskiDigits encode(const ContinuedFraction& cf, const Rat& beta,
                       long long K);

}  // namespace cfcircle
