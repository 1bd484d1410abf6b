// Paired constructions of digit streams, interval families, and merged
// block subsets.

#include <cfcircle/witness.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cfcircle {

OstrowskiDigits gap_family_witness(const ContinuedFraction& cf,
                                   const IntervalFamily& f) {
  std::ostringstream name;
  name << "gap-support(" << f.name() << ")";
  IntervalFamily fam = f;
  return OstrowskiDigits::from_support(
      [fam](long long i) -> std::optional<SupportPoint> {
        if (auto sz = fam.size(); sz && i + 1 > *sz) return std::nullopt;
        return SupportPoint{fam.t(i + 1) + 1, 1};
      },
      cf.digits(), name.str());
}

std::vector<long long> rising_digit_indices(const ContinuedFraction& cf,
                                            long long count,
                                            long long scan_budget) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  if (cf.digits().boundedness() == Boundedness::bounded)
    throw std::invalid_argument(
        "rising digit scan requires an unbounded digit stream");
  std::vector<long long> out;
  long long k = 1;
  long long best = 2;  // digits must exceed 2, then each previous pick
  while (static_cast<long long>(out.size()) < count) {
    if (k > scan_budget)
      throw RefinementError("rising digit scan exhausted its budget");
    // Gap rule: the i-th step (finding n_{i+1} after n_i) needs a gap >= i.
    const long long gap_needed =
        out.empty() ? 0 : static_cast<long long>(out.size());
    if ((out.empty() || k - out.back() >= gap_needed) && cf.a(k) > best) {
      out.push_back(k);
      best = cf.a(k);
    }
    ++k;
  }
  return out;
}

IntervalFamily family_from_block_indices(const std::vector<long long>& n,
                                         std::string name) {
  if (n.size() < 2)
    throw std::invalid_argument("need at least two block indices");
  for (size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 1 || (i > 0 && n[i] <= n[i - 1]))
      throw std::invalid_argument("block indices must be >= 1, increasing");
  }
  std::vector<long long> s, t;
  s.push_back(1);
  t.push_back(n[1] - 2);
  for (size_t i = 1; i + 1 < n.size(); ++i) {
    s.push_back(n[i]);
    t.push_back(n[i + 1] - 2);
  }
  return IntervalFamily::fixed(std::move(name), std::move(s), std::move(t));
}

OstrowskiDigits half_digit_witness(const ContinuedFraction& cf,
                                   const std::vector<long long>& n) {
  const IntervalFamily fam = family_from_block_indices(n, "blocks");
  const long long intervals = *fam.size();
  std::vector<SupportPoint> points;
  for (long long i = 1; i <= intervals; ++i) {
    const long long gap = fam.t(i) + 1;
    const long long digit = cf.a(gap + 1) / 2;
    if (digit > 0) points.push_back({gap, digit});
  }
  return OstrowskiDigits::from_support(
      [points](long long i) -> std::optional<SupportPoint> {
        if (i >= static_cast<long long>(points.size())) return std::nullopt;
        return points[static_cast<size_t>(i)];
      },
      cf.digits(), "half-digit");
}

OstrowskiDigits sparse_support_witness(
    const ContinuedFraction& cf,
    std::function<std::optional<long long>(long long)> kth_support,
    std::string name) {
  if (!kth_support) throw std::invalid_argument("null support rule");
  return OstrowskiDigits::from_support(
      [kth_support](long long i) -> std::optional<SupportPoint> {
        auto idx = kth_support(i);
        if (!idx) return std::nullopt;
        return SupportPoint{*idx, 1};
      },
      cf.digits(), std::move(name));
}

OstrowskiDigits square_support_witness(const ContinuedFraction& cf) {
  return sparse_support_witness(
      cf,
      [](long long i) -> std::optional<long long> {
        return (i + 1) * (i + 1);
      },
      "square-support");
}

SquareSpikeBundle square_spike_witness() {
  CFDigits alpha = CFDigits::square_spike();
  // Blocks sit at m_i = (3i)^2 = 9i^2, so every gap point t_i + 1 =
  // 9(i+1)^2 - 1 is immediately followed by a spiked partial quotient
  // a_{9(i+1)^2} = 36(i+1)^2.  With s_1 = 1 the lengths are t_1 - s_1 = 33
  // and t_i - s_i = 9(i+1)^2 - 2 - 9i^2 = 18i + 7 for i >= 2.
  IntervalFamily family = IntervalFamily::from_rule(
      "square-spike-blocks", 1, [](long long i) -> Int {
        if (i == 1) return Int(33);
        return Int(18) * i + 7;
      });
  ContinuedFraction cf(alpha);
  OstrowskiDigits beta = gap_family_witness(cf, family);
  return SquareSpikeBundle{std::move(alpha), std::move(family),
                           std::move(beta)};
}

MergedSequence merged_sequence(const ContinuedFraction& cf, long long N) {
  MergedSequence out;
  const auto tags = merged_tags(cf, N);
  out.entries.reserve(tags.size());
  Int prev = 0;
  for (size_t i = 0; i < tags.size(); ++i) {
    MergedEntry e;
    e.index = static_cast<long long>(i) + 1;
    e.n = tags[i].n;
    e.r = tags[i].r;
    e.x = Int(tags[i].r) * cf.q(tags[i].n);
    if (e.x <= prev)
      throw std::logic_error("merged sequence failed to increase strictly");
    prev = e.x;
    out.entries.push_back(std::move(e));
  }
  return out;
}

IndexSet midrange_block_set(const ContinuedFraction& cf,
                            const MergedSequence& xs, const IntervalFamily& f,
                            const std::vector<long long>& gap_interval_indices,
                            std::string descriptor) {
  std::vector<long long> gaps;
  gaps.reserve(gap_interval_indices.size());
  for (long long i : gap_interval_indices) gaps.push_back(f.t(i) + 1);
  std::sort(gaps.begin(), gaps.end());
  std::vector<long long> out;
  for (const auto& e : xs.entries) {
    if (!std::binary_search(gaps.begin(), gaps.end(), e.n)) continue;
    const long long a = cf.a(e.n + 1);
    const long long lo = (a + 3) / 4;      // ceil(a/4)
    const long long hi = (3 * a) / 4;      // floor(3a/4)
    if (e.r >= lo && e.r <= hi) out.push_back(e.index);
  }
  return make_index_set(std::move(out), std::move(descriptor));
}

IndexSet stride_positions(long long N, long long stride,
                          std::string descriptor) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  std::vector<long long> out;
  for (long long v = stride; v <= N; v += stride) out.push_back(v);
  return make_index_set(std::move(out), std::move(descriptor));
}

}  // namespace cfcircle
