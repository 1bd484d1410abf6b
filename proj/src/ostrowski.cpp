// Digit streams over a continued fraction: storage kinds, constraint
// validation, rigorous decoding, and exact greedy encoding.

#include <cfcircle/ostrowski.hpp>

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cfcircle {

// ---------------------------------------------------------------------------
// Storage.

struct OstrowskiDigits::Impl {
  enum class Kind { list, support } kind;
  CFDigits alpha;
  std::string name;
  bool even_caps_declared = true;

  // kind == list
  std::vector<long long> digits;

  // kind == support
  std::function<std::optional<SupportPoint>(long long)> generator;
  mutable std::vector<SupportPoint> cache;
  mutable bool exhausted = false;

  Impl(Kind k, CFDigits a, std::string n)
      : kind(k), alpha(std::move(a)), name(std::move(n)) {}

  // Extends the support cache until it covers index `k` (last cached support
  // index >= k) or the generator is exhausted.
  void materialize_to(long long k) const {
    while (!exhausted && (cache.empty() || cache.back().index < k)) {
      auto next = generator(static_cast<long long>(cache.size()));
      if (!next) {
        exhausted = true;
        break;
      }
      if (next->index < 0 || next->digit <= 0)
        throw std::invalid_argument(
            "support generator must yield nonnegative indices and positive "
            "digits");
      if (!cache.empty() && next->index <= cache.back().index)
        throw std::invalid_argument(
            "support generator must yield strictly increasing indices");
      cache.push_back(*next);
    }
  }
};

OstrowskiDigits::OstrowskiDigits(std::shared_ptr<Impl> impl)
    : impl_(std::move(impl)) {}

OstrowskiDigits OstrowskiDigits::from_list(std::vector<long long> digits,
                                           CFDigits alpha, std::string name) {
  auto impl = std::make_shared<Impl>(Impl::Kind::list, std::move(alpha),
                                     std::move(name));
  impl->digits = std::move(digits);
  for (long long v : impl->digits)
    if (v < 0) throw std::invalid_argument("digits must be nonnegative");
  return OstrowskiDigits(std::move(impl));
}

OstrowskiDigits OstrowskiDigits::zero(CFDigits alpha) {
  return from_list({}, std::move(alpha), "zero");
}

OstrowskiDigits OstrowskiDigits::from_support(
    std::function<std::optional<SupportPoint>(long long)> generator,
    CFDigits alpha, std::string name, bool even_caps_declared) {
  if (!generator) throw std::invalid_argument("null support generator");
  auto impl = std::make_shared<Impl>(Impl::Kind::support, std::move(alpha),
                                     std::move(name));
  impl->generator = std::move(generator);
  impl->even_caps_declared = even_caps_declared;
  return OstrowskiDigits(std::move(impl));
}

long long OstrowskiDigits::at(long long k) const {
  if (k < 0) throw std::invalid_argument("digit index must be >= 0");
  if (impl_->kind == Impl::Kind::list) {
    return k < static_cast<long long>(impl_->digits.size())
               ? impl_->digits[static_cast<size_t>(k)]
               : 0;
  }
  impl_->materialize_to(k);
  const auto& c = impl_->cache;
  auto it = std::lower_bound(
      c.begin(), c.end(), k,
      [](const SupportPoint& s, long long v) { return s.index < v; });
  if (it != c.end() && it->index == k) return it->digit;
  return 0;
}

std::vector<long long> OstrowskiDigits::support(long long depth) const {
  std::vector<long long> out;
  for (const auto& s : support_in(0, depth)) out.push_back(s.index);
  return out;
}

std::vector<SupportPoint> OstrowskiDigits::support_in(long long lo,
                                                      long long hi) const {
  std::vector<SupportPoint> out;
  if (hi < lo) return out;
  lo = std::max<long long>(lo, 0);
  if (impl_->kind == Impl::Kind::list) {
    const long long top = std::min<long long>(
        hi, static_cast<long long>(impl_->digits.size()) - 1);
    for (long long k = lo; k <= top; ++k)
      if (impl_->digits[static_cast<size_t>(k)] != 0)
        out.push_back({k, impl_->digits[static_cast<size_t>(k)]});
    return out;
  }
  impl_->materialize_to(hi);
  for (const auto& s : impl_->cache) {
    if (s.index > hi) break;
    if (s.index >= lo) out.push_back(s);
  }
  return out;
}

bool OstrowskiDigits::zero_beyond(long long k) const {
  if (impl_->kind == Impl::Kind::list)
    return k + 1 >= static_cast<long long>(impl_->digits.size());
  impl_->materialize_to(k + 1);
  if (!impl_->exhausted) return false;
  return impl_->cache.empty() || impl_->cache.back().index <= k;
}

const CFDigits& OstrowskiDigits::alpha() const { return impl_->alpha; }
const std::string& OstrowskiDigits::name() const { return impl_->name; }
bool OstrowskiDigits::even_caps_declared() const {
  return impl_->even_caps_declared;
}

std::string OstrowskiDigits::descriptor() const {
  std::ostringstream os;
  os << "digits{" << impl_->name << ", over " << impl_->alpha.descriptor();
  if (impl_->kind == Impl::Kind::list) {
    os << ", list[" << impl_->digits.size() << "]:";
    const size_t show = std::min<size_t>(impl_->digits.size(), 24);
    for (size_t i = 0; i < show; ++i) os << (i ? "," : "") << impl_->digits[i];
    if (impl_->digits.size() > show) os << ",...";
  } else {
    os << ", support:";
    impl_->materialize_to(0);
    const size_t show = std::min<size_t>(impl_->cache.size(), 8);
    for (size_t i = 0; i < show; ++i) {
      os << (i ? "," : "") << impl_->cache[i].index << ":"
         << impl_->cache[i].digit;
    }
    if (!impl_->exhausted || impl_->cache.size() > show) os << ",...";
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Validation.

ValidationResult validate(const ContinuedFraction& cf,
                          const OstrowskiDigits& d, long long depth) {
  ValidationResult res;
  long long prev = 0;
  for (long long k = 0; k <= depth; ++k) {
    const long long dk = d.at(k);
    const long long cap = (k == 0) ? cf.a(1) - 1 : cf.a(k + 1);
    if (dk < 0 || dk > cap) {
      res.ok = false;
      res.violation_index = k;
      res.rule = "range";
      return res;
    }
    if (k >= 1 && dk == cf.a(k + 1) && prev != 0) {
      res.ok = false;
      res.violation_index = k;
      res.rule = "carry";
      return res;
    }
    if (k % 2 == 0 && dk < cf.a(k + 1)) ++res.unsaturated_even_count;
    prev = dk;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Decoding.

LinearForm decode_head_form(const ContinuedFraction& cf,
                            const OstrowskiDigits& d, long long K) {
  LinearForm acc{0, Rat(0)};
  for (const auto& s : d.support_in(0, K))
    acc = acc + cf.theta_form(s.index).scaled(Int(s.digit));
  return acc;
}

Rat decode_tail_bound(const ContinuedFraction& cf, const OstrowskiDigits& d,
                      long long K) {
  if (d.zero_beyond(K)) return Rat(0);
  // Telescoping over any valid tail:  sum_{k>K} d_k|theta_k| <= |theta_K| +
  // |theta_{K+1}|, bounded above by 1/q_{K+1} + 1/q_{K+2}.
  return cf.theta_abs_upper(K) + cf.theta_abs_upper(K + 1);
}

Enclosure decode(const ContinuedFraction& cf, const OstrowskiDigits& d,
                 long long K, const Rat& target_width) {
  if (target_width <= 0) throw std::invalid_argument("width must be positive");
  const LinearForm head = decode_head_form(cf, d, K);
  const Rat tail = decode_tail_bound(cf, d, K);
  return cf.enclose(head, target_width).widened(tail);
}

// ---------------------------------------------------------------------------
// Encoding.

namespace {

// Largest integer F with F*den <= num, both linear forms with den > 0,
// together with whether num == F*den exactly. Decided with exact sign
// evaluations; enclosures only steer the search.
struct FloorRatio {
  Int f;
  bool exact;
};

FloorRatio floor_ratio(const ContinuedFraction& cf, const LinearForm& num,
                       const LinearForm& den, const Rat& den_lower) {
  // den_lower: positive a-priori lower bound for the value of den, used to
  // pick refinement widths.
  Rat w = den_lower / 8;
  for (int round = 0; round < 64; ++round) {
    const Enclosure en = cf.enclose(num, w);
    const Enclosure ed = cf.enclose(den, w);
    if (ed.lo <= 0) {
      w /= 16;
      continue;
    }
    // Valid quotient bounds for num/den with den > 0: divide each numerator
    // endpoint by the denominator endpoint of matching sign effect.
    const Rat ratio_lo = (en.lo >= 0) ? en.lo / ed.hi : en.lo / ed.lo;
    const Rat ratio_hi = (en.hi >= 0) ? en.hi / ed.lo : en.hi / ed.hi;
    const Int f_lo = rat_floor(ratio_lo);
    const Int f_hi = rat_floor(ratio_hi);
    if (f_hi - f_lo <= 1) {
      const int s = cf.sign(num - den.scaled(f_hi));
      if (s == 0) return {f_hi, true};
      if (s > 0) return {f_hi, false};
      if (f_lo == f_hi) {
        // Cannot happen with correct bounds; refine and retry.
        w /= 16;
        continue;
      }
      return {f_lo, cf.sign(num - den.scaled(f_lo)) == 0};
    }
    w /= 16;
  }
  throw RefinementError("floor_ratio failed to converge");
}

}  // namespace

std::vector<long long> encode_form(const ContinuedFraction& cf,
                                   const LinearForm& beta, long long K) {
  if (K < 0) throw std::invalid_argument("encode depth must be >= 0");
  // Range precondition: -alpha < beta < 1 - alpha, both strict.
  // beta + alpha has form {c+1, e}; beta + alpha - 1 has form {c+1, e-1}.
  const LinearForm shifted{beta.c + 1, beta.e};
  if (cf.sign(shifted) <= 0 || cf.sign(shifted - LinearForm{0, Rat(1)}) >= 0)
    throw std::invalid_argument("value outside the representable interval");

  std::vector<long long> out;
  out.reserve(static_cast<size_t>(K + 1));
  // Work with t_j = (-1)^j * (remainder after digits < j); every step keeps
  // t_j in the half-open fundamental cell tiled by the digit classes
  //   d = 0:      (-|theta_j|, |theta_{j+1}|)
  //   d = c >= 1: ((c-1)|theta_j| + |theta_{j+1}|, c|theta_j| + |theta_{j+1}|]
  // with the boundary value c|theta_j| + |theta_{j+1}| settled by parity so
  // that the saturated continuation stays inside the digit constraints.
  LinearForm t = beta;
  for (long long j = 0; j <= K; ++j) {
    const LinearForm uj = cf.theta_abs_form(j);
    const LinearForm uj1 = cf.theta_abs_form(j + 1);
    const LinearForm x = t - uj1;
    long long digit = 0;
    const int sx = cf.sign(x);
    if (sx >= 0) {
      const FloorRatio fr =
          floor_ratio(cf, x, uj, cf.theta_abs_lower(j));
      Int dig;
      if (fr.exact) {
        // t sits exactly on the boundary F|theta_j| + |theta_{j+1}|; the
        // even/odd split picks the branch whose forced continuation is the
        // valid saturated chain.
        dig = (j % 2 == 0) ? fr.f + 1 : fr.f;
      } else {
        dig = fr.f + 1;
      }
      if (dig < 0 || dig > Int(std::numeric_limits<long long>::max()))
        throw std::logic_error("digit out of integer range");
      digit = static_cast<long long>(dig);
    }
    const long long cap = (j == 0) ? cf.a(1) - 1 : cf.a(j + 1);
    if (digit < 0 || digit > cap)
      throw std::logic_error("greedy digit escaped its cap");
    out.push_back(digit);
    t = uj.scaled(Int(digit)) - t;
  }
  return out;
}

OstrowskiDigits encode(const ContinuedFraction& cf, const Rat& beta,
                       long long K) {
  auto digits = encode_form(cf, LinearForm{0, beta}, K);
  std::ostringstream name;
  name << "encode(" << beta << ")";
  auto out =
      OstrowskiDigits::from_list(std::move(digits), cf.digits(), name.str());
  const ValidationResult check = validate(cf, out, K);
  if (!check.ok)
    throw std::logic_error("greedy encoding violated digit constraints");
  return out;
}

}  // namespace cfcircle
