#include <cfcircle/cf.hpp>

#include <sstream>
#include <utility>

namespace cfcircle {

// ---------------------------------------------------------------------------
// CFDigits
// ---------------------------------------------------------------------------

struct CFDigits::Impl {
  enum class Kind { list, periodic, rule, random } kind;
  std::string name;
  Boundedness boundedness = Boundedness::unknown;
  std::optional<long long> digit_bound;

  // list / periodic storage
  std::vector<long long> head;
  std::vector<long long> cycle;

  // rule storage (cached for determinism and speed)
  std::function<long long(long long)> rule;
  mutable std::vector<long long> cache;

  // random storage
  long long bound = 0;
  std::uint64_t seed = 0;

  long long at(long long k) const {
    if (k < 1) throw std::invalid_argument("CFDigits: digit index must be >= 1");
    switch (kind) {
      case Kind::list:
        if (k > static_cast<long long>(head.size()))
          throw StreamExhausted("CFDigits '" + name + "': digit " +
                                std::to_string(k) + " past end of list");
        return head[static_cast<size_t>(k - 1)];
      case Kind::periodic: {
        if (k <= static_cast<long long>(head.size()))
          return head[static_cast<size_t>(k - 1)];
        const long long off = (k - 1 - static_cast<long long>(head.size())) %
                              static_cast<long long>(cycle.size());
        return cycle[static_cast<size_t>(off)];
      }
      case Kind::rule: {
        while (static_cast<long long>(cache.size()) < k) {
          const long long idx = static_cast<long long>(cache.size()) + 1;
          const long long d = rule(idx);
          if (d < 1)
            throw std::invalid_argument("CFDigits '" + name + "': rule gave a_" +
                                        std::to_string(idx) + " = " +
                                        std::to_string(d) + " < 1");
          cache.push_back(d);
        }
        return cache[static_cast<size_t>(k - 1)];
      }
      case Kind::random:
        return 1 + static_cast<long long>(
                       seeded_draw(seed, static_cast<std::uint64_t>(k)) %
                       static_cast<std::uint64_t>(bound));
    }
    throw std::logic_error("CFDigits: unreachable");
  }
};

CFDigits::CFDigits(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

CFDigits CFDigits::from_list(std::vector<long long> digits, std::string name) {
  for (size_t i = 0; i < digits.size(); ++i)
    if (digits[i] < 1)
      throw std::invalid_argument("CFDigits: a_" + std::to_string(i + 1) +
                                  " must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::list;
  impl->name = std::move(name);
  impl->head = std::move(digits);
  long long bound = 1;
  for (const long long d : impl->head) bound = std::max(bound, d);
  impl->digit_bound = bound;
  impl->boundedness = Boundedness::bounded;
  return CFDigits(impl);
}

CFDigits CFDigits::periodic(std::vector<long long> head,
                            std::vector<long long> cycle, std::string name) {
  if (cycle.empty())
    throw std::invalid_argument("CFDigits: periodic stream needs a cycle");
  for (const long long d : head)
    if (d < 1) throw std::invalid_argument("CFDigits: digits must be >= 1");
  for (const long long d : cycle)
    if (d < 1) throw std::invalid_argument("CFDigits: digits must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::periodic;
  impl->name = std::move(name);
  impl->head = std::move(head);
  impl->cycle = std::move(cycle);
  long long bound = 1;
  for (const long long d : impl->head) bound = std::max(bound, d);
  for (const long long d : impl->cycle) bound = std::max(bound, d);
  impl->digit_bound = bound;
  impl->boundedness = Boundedness::bounded;
  return CFDigits(impl);
}

CFDigits CFDigits::from_rule(std::function<long long(long long)> rule,
                             std::string name, Boundedness boundedness,
                             std::optional<long long> digit_bound) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::rule;
  impl->name = std::move(name);
  impl->rule = std::move(rule);
  impl->boundedness = boundedness;
  impl->digit_bound = digit_bound;
  return CFDigits(impl);
}

CFDigits CFDigits::random_bounded(long long bound, std::uint64_t seed) {
  if (bound < 1)
    throw std::invalid_argument("CFDigits: random digit bound must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::random;
  impl->name = "random-bounded:" + std::to_string(bound) + "," +
               std::to_string(seed);
  impl->bound = bound;
  impl->seed = seed;
  impl->digit_bound = bound;
  impl->boundedness = Boundedness::bounded;
  return CFDigits(impl);
}

CFDigits CFDigits::golden() { return periodic({}, {1}, "golden"); }

CFDigits CFDigits::silver() { return periodic({}, {2}, "silver"); }

CFDigits CFDigits::square_spike() {
  return from_rule(
      [](long long k) -> long long {
        const long long r = static_cast<long long>(
            isqrt_floor(Int(k)).convert_to<long long>());
        return r * r == k ? 4 * k : 1;
      },
      "square-spike", Boundedness::unbounded, std::nullopt);
}

long long CFDigits::at(long long k) const { return impl_->at(k); }

const std::string& CFDigits::name() const { return impl_->name; }

Boundedness CFDigits::boundedness() const { return impl_->boundedness; }

std::optional<long long> CFDigits::digit_bound() const {
  return impl_->digit_bound;
}

std::optional<long long> CFDigits::known_depth() const {
  if (impl_->kind == Impl::Kind::list)
    return static_cast<long long>(impl_->head.size());
  return std::nullopt;
}

std::string CFDigits::descriptor() const {
  std::ostringstream out;
  out << "cf-digits;name=" << impl_->name << ";kind=";
  switch (impl_->kind) {
    case Impl::Kind::list: {
      out << "list;digits=";
      for (size_t i = 0; i < impl_->head.size(); ++i)
        out << (i ? "," : "") << impl_->head[i];
      break;
    }
    case Impl::Kind::periodic: {
      out << "periodic;head=";
      for (size_t i = 0; i < impl_->head.size(); ++i)
        out << (i ? "," : "") << impl_->head[i];
      out << ";cycle=";
      for (size_t i = 0; i < impl_->cycle.size(); ++i)
        out << (i ? "," : "") << impl_->cycle[i];
      break;
    }
    case Impl::Kind::rule: {
      // The name identifies the rule; a digit prefix pins the content.
      out << "rule;prefix=";
      for (long long k = 1; k <= 32; ++k) out << (k > 1 ? "," : "") << at(k);
      break;
    }
    case Impl::Kind::random:
      out << "random;bound=" << impl_->bound << ";seed=" << impl_->seed;
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// ContinuedFraction
// ---------------------------------------------------------------------------

ContinuedFraction::ContinuedFraction(CFDigits digits)
    : digits_(std::move(digits)) {
  // Seeds: p_{-1}=1, q_{-1}=0, p_0=0, q_0=1.
  p_ = {Int(1), Int(0)};
  q_ = {Int(0), Int(1)};
}

void ContinuedFraction::ensure(long long n) const {
  while (static_cast<long long>(p_.size()) - 2 < n) {
    const long long k = static_cast<long long>(p_.size()) - 1;  // next index
    const long long ak = digits_.at(k);
    p_.push_back(Int(ak) * p_[p_.size() - 1] + p_[p_.size() - 2]);
    q_.push_back(Int(ak) * q_[q_.size() - 1] + q_[q_.size() - 2]);
  }
}

const Int& ContinuedFraction::p(long long n) const {
  if (n < -1) throw std::invalid_argument("convergent index must be >= -1");
  ensure(n);
  return p_[static_cast<size_t>(n + 1)];
}

const Int& ContinuedFraction::q(long long n) const {
  if (n < -1) throw std::invalid_argument("convergent index must be >= -1");
  ensure(n);
  return q_[static_cast<size_t>(n + 1)];
}

std::vector<Convergent> ContinuedFraction::convergents(long long n) const {
  if (n < 0) throw std::invalid_argument("convergents: n must be >= 0");
  ensure(n);
  std::vector<Convergent> out;
  out.reserve(static_cast<size_t>(n + 1));
  for (long long i = 0; i <= n; ++i) out.push_back({i, p(i), q(i)});
  return out;
}

Enclosure ContinuedFraction::alpha_enclosure(long long depth) const {
  if (depth < 1) throw std::invalid_argument("alpha_enclosure: depth >= 1");
  ensure(depth + 1);
  Rat a(p(depth), q(depth));
  Rat b(p(depth + 1), q(depth + 1));
  if (a > b) std::swap(a, b);
  return Enclosure(a, b);
}

Enclosure ContinuedFraction::alpha_to_width(const Rat& target_width) const {
  if (target_width <= 0)
    throw std::invalid_argument("alpha_to_width: width must be positive");
  const long long d = depth_for_q_product(Rat(1) / target_width);
  return alpha_enclosure(d);
}

LinearForm ContinuedFraction::theta_form(long long n) const {
  if (n < 0) throw std::invalid_argument("theta: n must be >= 0");
  return LinearForm(q(n), -Rat(p(n)));
}

LinearForm ContinuedFraction::theta_abs_form(long long n) const {
  const LinearForm t = theta_form(n);
  return (n % 2 == 0) ? t : -t;
}

Enclosure ContinuedFraction::theta(long long n, const Rat& target_width) const {
  Enclosure e = enclose(theta_form(n), target_width);
  // Clip with the exact bracket so the enclosure always excludes 0 and has
  // the sign (-1)^n even at loose target widths.
  const Rat lo = theta_abs_lower(n), hi = theta_abs_upper(n);
  if (n % 2 == 0)
    return Enclosure(std::max(e.lo, lo), std::min(e.hi, hi));
  return Enclosure(std::max(e.lo, Rat(-hi)), std::min(e.hi, Rat(-lo)));
}

Enclosure ContinuedFraction::theta_abs(long long n,
                                       const Rat& target_width) const {
  const Enclosure e = theta(n, target_width);
  return (n % 2 == 0) ? e : -e;
}

Rat ContinuedFraction::theta_abs_lower(long long n) const {
  return Rat(1, q(n + 1) + q(n));
}

Rat ContinuedFraction::theta_abs_upper(long long n) const {
  return Rat(1, q(n + 1));
}

Enclosure ContinuedFraction::eta(long long n, const Rat& target_width) const {
  const Rat qn(q(n));
  return theta_abs(n, target_width / qn).scaled(qn);
}

Int ContinuedFraction::cross_theta_integer(long long k, long long m) const {
  return q(m) * p(k) - q(k) * p(m);
}

int ContinuedFraction::sign(const LinearForm& f) const {
  if (f.c == 0) return f.e == 0 ? 0 : (f.e > 0 ? 1 : -1);
  // alpha is irrational, so c*alpha + e is never zero; refine until decided.
  long long depth = 8;
  while (depth <= depth_budget_) {
    const Enclosure a = alpha_enclosure(depth);
    const Enclosure v = a.scaled(Rat(f.c)) + f.e;
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    depth *= 2;
  }
  throw RefinementError("sign: depth budget exhausted for linear form");
}

Enclosure ContinuedFraction::enclose(const LinearForm& f,
                                     const Rat& target_width) const {
  if (target_width <= 0)
    throw std::invalid_argument("enclose: width must be positive");
  if (f.c == 0) return Enclosure::point(f.e);
  const Rat c_abs = f.c > 0 ? Rat(f.c) : Rat(-f.c);
  const Enclosure a = alpha_to_width(target_width / c_abs);
  return a.scaled(Rat(f.c)) + f.e;
}

Rat ContinuedFraction::lambda_hat(long long K) const {
  if (K < 2) throw std::invalid_argument("lambda_hat: K must be >= 2");
  ensure(K + 2);
  // Amortized per-step decay rate of |theta_k| over the horizon: the largest
  // certified upper bound of sqrt(|theta_{k+2}| / |theta_k|), k <= K - 2.
  // The recurrence |theta_k| = a_{k+2}|theta_{k+1}| + |theta_{k+2}| makes
  // every two-step ratio < 1/2, so the result always lies in (0, 0.71).
  Rat best(0);
  for (long long k = 0; k + 2 <= K; ++k) {
    // Tight rational bounds on both terms (relative slop ~2^-40 via the
    // exact lower brackets), then an upper bound on the ratio.
    const Rat slop(Int(1), Int(1) << 40);
    const Rat w_num = theta_abs_lower(k + 2) * slop;
    const Rat w_den = theta_abs_lower(k) * slop;
    const Enclosure num_e = theta_abs(k + 2, w_num);
    const Enclosure den_e = theta_abs(k, w_den);
    const Rat ratio_ub = num_e.hi / den_e.lo;
    // sqrt(a/b) <= (floor(sqrt(a*b)) + 1)/b exactly.
    const Rat bound(isqrt_floor(num(ratio_ub) * den(ratio_ub)) + 1,
                    den(ratio_ub));
    if (bound > best) best = bound;
  }
  return best;
}

long long ContinuedFraction::depth_for_q_product(const Rat& bound) const {
  long long d = last_product_depth_;
  ensure(d + 1);
  // Walk up until the product clears the bound, then back down to the
  // smallest depth that still clears it (so the result is independent of
  // the resume point and matches a fresh search exactly).
  while (Rat(q(d) * q(d + 1)) < bound) {
    ++d;
    if (d > depth_budget_)
      throw RefinementError("depth_for_q_product: depth budget exhausted");
    ensure(d + 1);
  }
  while (d > 1 && Rat(q(d - 1) * q(d)) >= bound) --d;
  last_product_depth_ = d;
  return d;
}

void ContinuedFraction::set_depth_budget(long long budget) {
  if (budget < 8) throw std::invalid_argument("depth budget too small");
  depth_budget_ = budget;
}

}  // namespace cfcircle
