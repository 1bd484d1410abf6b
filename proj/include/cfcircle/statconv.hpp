// Evidence aggregation over a norm series: per-threshold classification of
// every entry as certified-below, certified-above, or unknown; exceptional
// densities at checkpoints; optional exclusion of a predicted sparse index
// set; window containment checks; cross-validation of observed exceptional
// indices against a predicted set; and the decay parameters (lambda, m, i0)
// that calibrate the predictions.
//
// All classification happens on the quantized stored enclosures with exact
// rational threshold comparisons, so reports are reproducible bit for bit.

#pragma once

#include <cfcircle/density.hpp>
#include <cfcircle/norms.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cfcircle {

enum class Verdict { for_membership, against, inconclusive };
std::string to_string(Verdict v);

/// Count and ratio of a property among the first `checkpoint` entries.
struct CheckpointStat {
  long long checkpoint = 0;
  long long count = 0;
  Rat ratio;
};

/// Per-threshold row of the report.
struct EpsRow {
  Rat eps;
  long long below = 0;    // entries certified < eps at the full horizon
  long long above = 0;    // entries certified >= eps
  long long unknown = 0;  // enclosure straddles eps (or entry unknown)
  std::vector<CheckpointStat> exceptional;      // not certified-below
  std::vector<CheckpointStat> residual;         // exceptional minus exclusion
  std::vector<CheckpointStat> certified_above;  // above, outside exclusion
  bool exceptional_nonincreasing = true;  // over the last three checkpoints
  bool residual_nonincreasing = true;
};

/// Exclusion bookkeeping (when a predicted index set is supplied).
struct ExclusionInfo {
  std::string descriptor;
  std::vector<CheckpointStat> profile;  // density of the excluded set itself
  bool nonincreasing = true;
};

/// Decay calibration attached to a report.
struct DecayParams {
  Rat lambda_hat;
  long long m = 0;
  long long i0 = 0;
};

struct EvidenceReport {
  Selector selector = Selector::qn;
  long long N = 0;
  std::vector<long long> checkpoints;
  std::vector<EpsRow> rows;
  std::optional<ExclusionInfo> exclusion;
  std::optional<DecayParams> params;
  Verdict verdict = Verdict::inconclusive;
};

/// Aggregates the series against every threshold in eps_grid (each in
/// (0, 1/2], strictly increasing) at the given checkpoints (positive,
/// increasing, last <= N).
///
/// Verdict policy, in order:
///   against: some threshold has certified-above density >= 1/10 outside
///     the exclusion at the final checkpoint;
///   for_membership: every threshold has residual exceptional density
///     <= 1/20 at the final checkpoint, residual densities nonincreasing
///     over the last three checkpoints, and (when an exclusion is present)
///     the exclusion's own density profile nonincreasing;
///   inconclusive otherwise.
/// With no exclusion the residual equals the raw exceptional count.
EvidenceReport stat_report(const NormSeries& series,
                           const std::vector<Rat>& eps_grid,
                           std::vector<long long> checkpoints,
                           const std::optional<IndexSet>& exclusion = {},
                           const std::optional<DecayParams>& params = {});

/// Containment of selected entries in a value window.  The window [a, b] is
/// reduced to distance-to-integer range first; an entry passes when its
/// stored enclosure lies inside the reduced window widened by slack, fails
/// when disjoint from it, and is unknown otherwise.
struct WindowCheckEntry {
  long long index = 0;
  Ternary status = Ternary::unknown;
};
struct WindowCheckResult {
  Enclosure window;  // after reduction, before slack
  Rat slack;
  std::vector<WindowCheckEntry> entries;
  long long pass = 0, fail = 0, unknown = 0;
  bool all_pass = false;
};
WindowCheckResult window_check(const NormSeries& series, const IndexSet& at,
                               const Rat& a, const Rat& b, const Rat& slack);

/// Compares the observed certified-above indices at threshold eps against a
/// predicted index set: violations are certified-above positions outside
/// the prediction; unknown_outside counts undecided positions outside it.
struct CrossCheckResult {
  Rat eps;
  long long observed_above = 0;
  long long predicted_in_range = 0;
  std::vector<long long> violations;
  long long unknown_outside = 0;
  bool contained = false;  // no violations
  bool vacuous = false;    // no certified-above entries at all
};
CrossCheckResult exception_cross_check(const NormSeries& series,
                                       const IndexSet& predicted,
                                       const Rat& eps);

/// Least m >= 1 with lambda^m / (1 - lambda) < eps / 2.  Requires
/// 0 < lambda < 1 and eps > 0.
long long decay_m(const Rat& lambda_hat, const Rat& eps);

/// Least cutoff i0 >= 1 such that every interval i >= i0 within the scanned
/// horizon has length t_i - s_i > 2m.
long long family_growth_i0(const IntervalFamily& f, long long m,
                           long long horizon);

/// Bundles lambda_hat(K), the decay margin for eps, and the family cutoff.
DecayParams derive_decay_params(const ContinuedFraction& cf,
                                const IntervalFamily& f, const Rat& eps,
                                long long lambda_depth, long long horizon);

}  // namespace cfcircle
