// Exact aggregation of norm-series enclosures into convergence evidence.

#include <cfcircle/statconv.hpp>

#include <algorithm>
#include <stdexcept>

namespace cfcircle {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::for_membership: return "for";
    case Verdict::against: return "against";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

enum class Class { below, above, straddle };

// Exact classification of a stored entry against eps: the enclosure is
// [lo_q, hi_q]/kQuantDen; certified below when hi < eps, certified above
// when lo >= eps.
Class classify(const SeriesEntry& e, const Rat& eps) {
  if (e.unknown) return Class::straddle;
  if (Rat(e.hi_q, kQuantDen) < eps) return Class::below;
  if (Rat(e.lo_q, kQuantDen) >= eps) return Class::above;
  return Class::straddle;
}

bool nonincreasing_tail(const std::vector<CheckpointStat>& stats) {
  // Over the last three checkpoints (or all of them when fewer).
  const size_t n = stats.size();
  const size_t from = n > 3 ? n - 3 : 0;
  for (size_t i = from + 1; i < n; ++i)
    if (stats[i].ratio > stats[i - 1].ratio) return false;
  return true;
}

void validate_checkpoints(const std::vector<long long>& cps, long long N) {
  if (cps.empty()) throw std::invalid_argument("need at least one checkpoint");
  for (size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] < 1 || (i > 0 && cps[i] <= cps[i - 1]))
      throw std::invalid_argument("checkpoints must be positive, increasing");
  }
  if (cps.back() > N)
    throw std::invalid_argument("checkpoints must not exceed the horizon");
}

}  // namespace

EvidenceReport stat_report(const NormSeries& series,
                           const std::vector<Rat>& eps_grid,
                           std::vector<long long> checkpoints,
                           const std::optional<IndexSet>& exclusion,
                           const std::optional<DecayParams>& params) {
  if (eps_grid.empty()) throw std::invalid_argument("empty threshold grid");
  for (size_t i = 0; i < eps_grid.size(); ++i) {
    if (eps_grid[i] <= 0 || eps_grid[i] > Rat(1, 2))
      throw std::invalid_argument("thresholds must lie in (0, 1/2]");
    if (i > 0 && eps_grid[i] <= eps_grid[i - 1])
      throw std::invalid_argument("thresholds must be strictly increasing");
  }
  validate_checkpoints(checkpoints, series.N);

  EvidenceReport rep;
  rep.selector = series.selector;
  rep.N = series.N;
  rep.checkpoints = checkpoints;
  rep.params = params;

  const Rat against_bar(1, 10);
  const Rat residual_bar(1, 20);

  if (exclusion) {
    ExclusionInfo info;
    info.descriptor = exclusion->descriptor;
    for (long long cp : checkpoints) {
      const long long c = exclusion->count_leq(cp);
      info.profile.push_back({cp, c, Rat(c, cp)});
    }
    info.nonincreasing = nonincreasing_tail(info.profile);
    rep.exclusion = std::move(info);
  }

  bool any_against = false;
  bool all_for = true;
  for (const Rat& eps : eps_grid) {
    EpsRow row;
    row.eps = eps;

    std::vector<long long> exceptional_cum(checkpoints.size(), 0);
    std::vector<long long> residual_cum(checkpoints.size(), 0);
    std::vector<long long> above_cum(checkpoints.size(), 0);
    size_t cp_pos = 0;
    long long exc = 0, res = 0, abv = 0;
    for (const auto& e : series.entries) {
      const Class c = classify(e, eps);
      const bool excluded = exclusion && exclusion->contains(e.index);
      if (c == Class::below) {
        ++row.below;
      } else {
        ++exc;
        if (c == Class::above) {
          ++row.above;
          if (!excluded) ++abv;
        } else {
          ++row.unknown;
        }
        if (!excluded) ++res;
      }
      while (cp_pos < checkpoints.size() &&
             e.index == checkpoints[cp_pos]) {
        exceptional_cum[cp_pos] = exc;
        residual_cum[cp_pos] = res;
        above_cum[cp_pos] = abv;
        ++cp_pos;
      }
    }
    for (size_t i = 0; i < checkpoints.size(); ++i) {
      const long long cp = checkpoints[i];
      row.exceptional.push_back({cp, exceptional_cum[i],
                                 Rat(exceptional_cum[i], cp)});
      row.residual.push_back({cp, residual_cum[i], Rat(residual_cum[i], cp)});
      row.certified_above.push_back({cp, above_cum[i], Rat(above_cum[i], cp)});
    }
    row.exceptional_nonincreasing = nonincreasing_tail(row.exceptional);
    row.residual_nonincreasing = nonincreasing_tail(row.residual);

    if (row.certified_above.back().ratio >= against_bar) any_against = true;
    const bool row_for =
        row.residual.back().ratio <= residual_bar &&
        row.residual_nonincreasing &&
        (!rep.exclusion || rep.exclusion->nonincreasing);
    if (!row_for) all_for = false;

    rep.rows.push_back(std::move(row));
  }

  if (any_against)
    rep.verdict = Verdict::against;
  else if (all_for)
    rep.verdict = Verdict::for_membership;
  else
    rep.verdict = Verdict::inconclusive;
  return rep;
}

WindowCheckResult window_check(const NormSeries& series, const IndexSet& at,
                               const Rat& a, const Rat& b, const Rat& slack) {
  if (b < a) throw std::invalid_argument("window must have a <= b");
  if (slack < 0) throw std::invalid_argument("slack must be >= 0");
  WindowCheckResult out;
  out.window = circle_norm(Enclosure(a, b));
  out.slack = slack;
  const Enclosure target = out.window.widened(slack);
  for (const auto& e : series.entries) {
    if (!at.contains(e.index)) continue;
    WindowCheckEntry we;
    we.index = e.index;
    if (e.unknown) {
      we.status = Ternary::unknown;
    } else {
      const Enclosure v = entry_enclosure(e);
      if (target.contains(v))
        we.status = Ternary::yes;
      else if (!target.intersects(v))
        we.status = Ternary::no;
      else
        we.status = Ternary::unknown;
    }
    if (we.status == Ternary::yes) ++out.pass;
    else if (we.status == Ternary::no) ++out.fail;
    else ++out.unknown;
    out.entries.push_back(we);
  }
  out.all_pass = out.fail == 0 && out.unknown == 0 && out.pass > 0;
  return out;
}

CrossCheckResult exception_cross_check(const NormSeries& series,
                                       const IndexSet& predicted,
                                       const Rat& eps) {
  if (eps <= 0 || eps > Rat(1, 2))
    throw std::invalid_argument("threshold must lie in (0, 1/2]");
  CrossCheckResult out;
  out.eps = eps;
  out.predicted_in_range = predicted.count_leq(series.N);
  for (const auto& e : series.entries) {
    const Class c = classify(e, eps);
    if (c == Class::above) {
      ++out.observed_above;
      if (!predicted.contains(e.index)) out.violations.push_back(e.index);
    } else if (c == Class::straddle && !predicted.contains(e.index)) {
      ++out.unknown_outside;
    }
  }
  out.contained = out.violations.empty();
  out.vacuous = out.observed_above == 0;
  return out;
}

long long decay_m(const Rat& lambda_hat, const Rat& eps) {
  if (lambda_hat <= 0 || lambda_hat >= 1)
    throw std::invalid_argument("decay rate must lie in (0, 1)");
  if (eps <= 0) throw std::invalid_argument("threshold must be positive");
  const Rat half_eps = eps / 2;
  Rat pow = lambda_hat;
  for (long long m = 1; m <= 1000000; ++m) {
    if (pow / (1 - lambda_hat) < half_eps) return m;
    pow *= lambda_hat;
  }
  throw RefinementError("decay margin search exhausted its budget");
}

long long family_growth_i0(const IntervalFamily& f, long long m,
                           long long horizon) {
  if (m < 1) throw std::invalid_argument("margin m must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (auto sz = f.size()) horizon = std::min(horizon, *sz);
  long long last_short = 0;
  for (long long i = 1; i <= horizon; ++i)
    if (f.t(i) - f.s(i) <= 2 * m) last_short = i;
  if (last_short >= horizon)
    throw RefinementError(
        "no interval beyond the horizon exceeds twice the margin");
  return last_short + 1;
}

DecayParams derive_decay_params(const ContinuedFraction& cf,
                                const IntervalFamily& f, const Rat& eps,
                                long long lambda_depth, long long horizon) {
  DecayParams out;
  out.lambda_hat = cf.lambda_hat(lambda_depth);
  out.m = decay_m(out.lambda_hat, eps);
  out.i0 = family_growth_i0(f, out.m, horizon);
  return out;
}

}  // namespace cfcircle
