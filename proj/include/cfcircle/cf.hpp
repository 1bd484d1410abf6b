// Exact continued-fraction engine for an irrational alpha in (0,1) given by
// a lazy digit stream: convergents, nested enclosures of alpha, the
// approximation errors theta_n = q_n*alpha - p_n with their exact rational
// brackets, and an exact sign oracle for linear forms c*alpha + e. The sign
// oracle is what makes every strict comparison in the library decidable:
// alpha is irrational, so refining the convergent enclosure eventually
// separates it from any rational point.

#pragma once

#include <cfcircle/enclosure.hpp>
#include <cfcircle/numeric.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfcircle {

/// A finite digit list was queried past its end.
class StreamExhausted : public std::runtime_error {
 public:
  explicit StreamExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// A width or depth budget was exhausted before a comparison was decided or
/// a target width reached.
class RefinementError : public std::runtime_error {
 public:
  explicit RefinementError(const std::string& what) : std::runtime_error(what) {}
};

enum class Boundedness { bounded, unbounded, unknown };

/// Digit stream a_1, a_2, ... of a continued fraction [0; a_1, a_2, ...].
/// Streams are immutable values; copies share the underlying representation.
class CFDigits {
 public:
  /// Explicit finite list; queries past the end throw StreamExhausted.
  static CFDigits from_list(std::vector<long long> digits, std::string name);
  /// Eventually-periodic stream: `head` then `cycle` repeated forever.
  static CFDigits periodic(std::vector<long long> head,
                           std::vector<long long> cycle, std::string name);
  /// Rule-based stream. The rule must return a_k >= 1 for every k >= 1.
  static CFDigits from_rule(std::function<long long(long long)> rule,
                            std::string name, Boundedness boundedness,
                            std::optional<long long> digit_bound);
  /// Seeded uniform digits in [1, bound]; deterministic in (bound, seed).
  static CFDigits random_bounded(long long bound, std::uint64_t seed);

  /// [0; 1, 1, 1, ...] — the golden-ratio conjugate.
  static CFDigits golden();
  /// [0; 2, 2, 2, ...].
  static CFDigits silver();
  /// Digits 4j^2 at the perfect squares k = j^2 and 1 elsewhere; unbounded.
  static CFDigits square_spike();

  /// Digit a_k, k >= 1.
  long long at(long long k) const;

  const std::string& name() const;
  Boundedness boundedness() const;
  /// Declared upper bound on digits, when known.
  std::optional<long long> digit_bound() const;
  /// Finite lists report their length; other kinds are unbounded in depth.
  std::optional<long long> known_depth() const;
  /// Stable serializable description (kind + parameters + digit prefix).
  std::string descriptor() const;

 private:
  struct Impl;
  explicit CFDigits(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// The exact value c*alpha + e. Closed under the operations the library
/// needs (sums of theta terms, remainders in digit extraction), and its sign
/// is exactly decidable via ContinuedFraction::sign.
struct LinearForm {
  Int c;
  Rat e;

  LinearForm() : c(0), e(0) {}
  LinearForm(Int c_, Rat e_) : c(std::move(c_)), e(std::move(e_)) {}
  static LinearForm rational(const Rat& v) { return LinearForm(Int(0), v); }

  LinearForm operator+(const LinearForm& o) const {
    return LinearForm(c + o.c, e + o.e);
  }
  LinearForm operator-(const LinearForm& o) const {
    return LinearForm(c - o.c, e - o.e);
  }
  LinearForm operator-() const { return LinearForm(-c, -e); }
  LinearForm scaled(const Int& k) const { return LinearForm(c * k, e * Rat(k)); }
  bool is_rational() const { return c == 0; }
};

struct Convergent {
  long long n;
  Int p;
  Int q;
};

/// Convergent table and exact decision procedures for one digit stream.
/// The table extends lazily and is memoized; all public methods are
/// logically const and deterministic.
class ContinuedFraction {
 public:
  explicit ContinuedFraction(CFDigits digits);

  const CFDigits& digits() const { return digits_; }
  long long a(long long k) const { return digits_.at(k); }

  /// p_n, q_n for n >= -1 (seeds p_{-1}=1, q_{-1}=0, p_0=0, q_0=1).
  const Int& p(long long n) const;
  const Int& q(long long n) const;

  /// Convergents 0..n as a list.
  std::vector<Convergent> convergents(long long n) const;

  /// Enclosure of alpha with endpoints p_d/q_d and p_{d+1}/q_{d+1} (ordered);
  /// width is exactly 1/(q_d * q_{d+1}).
  Enclosure alpha_enclosure(long long depth) const;

  /// Shallowest tabulated alpha enclosure with width <= target.
  Enclosure alpha_to_width(const Rat& target_width) const;

  /// theta_n = q_n*alpha - p_n as an exact linear form.
  LinearForm theta_form(long long n) const;
  /// |theta_n| = (-1)^n * theta_n as an exact linear form.
  LinearForm theta_abs_form(long long n) const;

  /// Enclosure of theta_n with width <= target_width; excludes 0, and the
  /// sign of every point in it is (-1)^n.
  Enclosure theta(long long n, const Rat& target_width) const;
  Enclosure theta_abs(long long n, const Rat& target_width) const;

  /// Exact rational bracket 1/(q_{n+1}+q_n) < |theta_n| < 1/q_{n+1}.
  Rat theta_abs_lower(long long n) const;
  Rat theta_abs_upper(long long n) const;

  /// Enclosure of eta_n = q_n * |theta_n|.
  Enclosure eta(long long n, const Rat& target_width) const;

  /// The exact integer q_m*p_k - q_k*p_m, which equals
  /// q_k*theta_m - q_m*theta_k; hence q_k*theta_m and q_m*theta_k have equal
  /// fractional parts.
  Int cross_theta_integer(long long k, long long m) const;

  /// Exact sign of c*alpha + e: -1, 0 (only when the form is rational zero),
  /// or +1. Decided by refining the alpha enclosure; throws RefinementError
  /// only if the depth budget is exhausted (cannot happen for forms built
  /// from finitely many theta terms at sane budgets).
  int sign(const LinearForm& f) const;

  /// True when f < g as exact reals.
  bool less(const LinearForm& f, const LinearForm& g) const {
    return sign(g - f) > 0;
  }

  /// Enclosure of f = c*alpha + e with width <= target_width.
  Enclosure enclose(const LinearForm& f, const Rat& target_width) const;

  /// Exact rational upper bound for max_{0 <= k <= K-2} sqrt(u_{k+2}/u_k),
  /// where u_n = |theta_n|; always < 1. This is the measured contraction
  /// rate of the error sequence over the working range.
  Rat lambda_hat(long long K) const;

  /// Least depth d with q_d * q_{d+1} >= bound (for width planning).
  long long depth_for_q_product(const Rat& bound) const;

  /// Depth budget for sign decisions and refinement loops.
  void set_depth_budget(long long budget);
  long long depth_budget() const { return depth_budget_; }

 private:
  void ensure(long long n) const;  // extend tables through index n

  CFDigits digits_;
  long long depth_budget_ = 1'000'000;
  // Index i holds p_{i-1}, q_{i-1}; seeded with n = -1 and n = 0.
  mutable std::vector<Int> p_;
  mutable std::vector<Int> q_;
  // Resume point for depth_for_q_product: successive width requests across
  // a series walk shrink monotonically, so restarting the search at the
  // previous answer makes the whole walk amortized linear.
  mutable long long last_product_depth_ = 1;
};

}  // namespace cfcircle
