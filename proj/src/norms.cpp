// Rigorous evaluation of ||x * beta|| along the q_n and merged multiplier
// sequences.  The multiplier q_n is folded into the digit expansion first:
// for k < n,  q_n*theta_k = (q_k*p_n - q_n*p_k) + q_k*theta_n, and the
// integer part drops on the circle, so
//
//   q_n*beta  ==  C*theta_n + sum_{k >= n} d_k*q_n*theta_k   (mod 1),
//   C = sum_{k < n} d_k*q_k.
//
// The right-hand side is a single exact linear form in alpha plus a
// telescoped tail bound, which keeps every enclosure narrow even though the
// raw products q_n*beta are astronomically large.

#include <cfcircle/norms.hpp>

#include <algorithm>
#include <stdexcept>

namespace cfcircle {

std::vector<MergedTag> merged_tags(const ContinuedFraction& cf, long long N) {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  std::vector<MergedTag> out;
  out.reserve(static_cast<size_t>(N));
  for (long long n = 1; static_cast<long long>(out.size()) < N; ++n) {
    const long long block = cf.a(n + 1);
    for (long long r = 1;
         r <= block && static_cast<long long>(out.size()) < N; ++r)
      out.push_back({n, r});
  }
  return out;
}

namespace {

// Shared per-block data: enclosure of the reduced form for r = 1 and the
// telescoped tail bound, both before multiplication by r.
struct BlockEval {
  Enclosure base;  // encloses C*theta_n + sum_{n <= k <= K} d_k*q_n*theta_k
  Rat tail;        // bounds |sum_{k > K} d_k*q_n*theta_k|
};

// head_coeff = C = sum_{k < n} d_k*q_k, supplied by the caller so that the
// series walk can maintain it incrementally.
BlockEval eval_block(const ContinuedFraction& cf, const OstrowskiDigits& d,
                     long long n, long long max_r, const Int& head_coeff,
                     const Rat& target_width) {
  const Rat per_r = target_width / max_r;
  const Int qn = cf.q(n);

  // Cut the tail deep enough that r*tail <= target_width/4:
  // q_n*(1/q_{K+1} + 1/q_{K+2}) <= 2*q_n/q_{K+1} <= per_r/4 once
  // q_{K+1} >= 8*q_n/per_r.  Streams that are zero past K need no margin.
  long long K = n;
  if (!d.zero_beyond(K)) {
    const Rat bound = Rat(8) * Rat(qn) / per_r;
    while (Rat(cf.q(K + 1)) < bound && !d.zero_beyond(K)) ++K;
  }

  LinearForm form = cf.theta_form(n).scaled(head_coeff);
  for (const auto& s : d.support_in(n, K))
    form = form + cf.theta_form(s.index).scaled(Int(s.digit) * qn);

  BlockEval out;
  out.tail = decode_tail_bound(cf, d, K) * Rat(qn);
  out.base = cf.enclose(form, per_r / 2);
  return out;
}

std::int64_t quantize_floor(const Rat& v) {
  Rat clipped = v;
  if (clipped < 0) clipped = 0;
  const Int f = rat_floor(clipped * Rat(kQuantDen));
  return static_cast<std::int64_t>(f);
}

std::int64_t quantize_ceil(const Rat& v) {
  Rat clipped = v;
  const Rat half(1, 2);
  if (clipped > half) clipped = half;
  const Int f = rat_floor(clipped * Rat(kQuantDen));
  const Rat back = Rat(f) / Rat(kQuantDen);
  return static_cast<std::int64_t>(back == clipped ? f : f + 1);
}

SeriesEntry make_entry(long long index, long long n, long long r,
                       const BlockEval& block) {
  const Enclosure value =
      block.base.scaled(Rat(r)).widened(block.tail * Rat(r));
  const Enclosure norm = circle_norm(value);
  SeriesEntry e;
  e.index = index;
  e.n = n;
  e.r = r;
  e.lo_q = quantize_floor(norm.lo);
  e.hi_q = quantize_ceil(norm.hi);
  e.unknown = false;
  return e;
}

SeriesEntry unknown_entry(long long index, long long n, long long r) {
  SeriesEntry e;
  e.index = index;
  e.n = n;
  e.r = r;
  e.lo_q = 0;
  e.hi_q = kQuantDen / 2;
  e.unknown = true;
  return e;
}

Int head_coeff_below(const ContinuedFraction& cf, const OstrowskiDigits& d,
                     long long n) {
  Int c = 0;
  for (const auto& s : d.support_in(0, n - 1))
    c += Int(s.digit) * cf.q(s.index);
  return c;
}

}  // namespace

Enclosure entry_enclosure(const SeriesEntry& e) {
  return Enclosure(Rat(e.lo_q, kQuantDen), Rat(e.hi_q, kQuantDen));
}

Enclosure scaled_qn_beta_norm(const ContinuedFraction& cf,
                              const OstrowskiDigits& d, long long n,
                              long long r, const Rat& target_width) {
  if (n < 1 || r < 1) throw std::invalid_argument("need n >= 1 and r >= 1");
  if (target_width <= 0) throw std::invalid_argument("width must be positive");
  const BlockEval block =
      eval_block(cf, d, n, r, head_coeff_below(cf, d, n), target_width);
  return circle_norm(block.base.scaled(Rat(r)).widened(block.tail * Rat(r)));
}

Enclosure qn_beta_norm(const ContinuedFraction& cf, const OstrowskiDigits& d,
                       long long n, const Rat& target_width) {
  return scaled_qn_beta_norm(cf, d, n, 1, target_width);
}

NormSeries norm_series(const ContinuedFraction& cf, const OstrowskiDigits& d,
                       Selector selector, long long N,
                       const Rat& target_width) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (target_width <= 0) throw std::invalid_argument("width must be positive");

  NormSeries series;
  series.selector = selector;
  series.N = N;
  series.target_width = target_width;
  series.alpha_descriptor = cf.digits().descriptor();
  series.beta_descriptor = d.descriptor();
  series.entries.reserve(static_cast<size_t>(N));

  // sum_{k < n} d_k*q_k, advanced block by block (q_0 = 1).
  Int head_coeff = Int(d.at(0));
  long long index = 1;
  for (long long n = 1; index <= N; ++n) {
    if (n > 1) head_coeff += Int(d.at(n - 1)) * cf.q(n - 1);
    const long long block = (selector == Selector::qn) ? 1 : cf.a(n + 1);
    bool block_ok = true;
    BlockEval eval;
    try {
      eval = eval_block(cf, d, n, block, head_coeff, target_width);
    } catch (const RefinementError&) {
      block_ok = false;
    }
    for (long long r = 1; r <= block && index <= N; ++r, ++index) {
      series.entries.push_back(block_ok ? make_entry(index, n, r, eval)
                                        : unknown_entry(index, n, r));
    }
  }
  return series;
}

}  // namespace cfcircle
