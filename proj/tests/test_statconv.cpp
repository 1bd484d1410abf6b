// Tests for evidence aggregation: threshold classification of stored
// enclosures, checkpoint densities with and without an excluded index set,
// the three-way verdict policy, window containment, cross-checks of observed
// exceptional indices, and the decay-parameter derivation.

#include <doctest.h>

#include <cfcircle/statconv.hpp>
#include <cfcircle/witness.hpp>

#include <cstdint>
#include <utility>
#include <vector>

using namespace cfcircle;

namespace {

// Builds a synthetic qn-series whose entry i has the given quantized bounds.
NormSeries synth(std::vector<std::pair<std::int64_t, std::int64_t>> vals) {
  NormSeries s;
  s.selector = Selector::qn;
  s.N = static_cast<long long>(vals.size());
  s.target_width = Rat(1, 1'000'000'000);
  s.alpha_descriptor = "synthetic-alpha";
  s.beta_descriptor = "synthetic-beta";
  for (size_t i = 0; i < vals.size(); ++i) {
    SeriesEntry e;
    e.index = static_cast<long long>(i) + 1;
    e.n = e.index;
    e.r = 1;
    e.lo_q = vals[i].first;
    e.hi_q = vals[i].second;
    e.unknown = false;
    s.entries.push_back(e);
  }
  return s;
}

constexpr std::int64_t kQ = kQuantDen;  // 10^15 grid

std::pair<std::int64_t, std::int64_t> tiny() { return {0, kQ / 1'000'000}; }
std::pair<std::int64_t, std::int64_t> quarter() { return {kQ / 4, kQ / 4}; }

}  // namespace

TEST_CASE("an everywhere-small series is evidence for membership") {
  const NormSeries s = synth(std::vector(40, tiny()));
  const EvidenceReport r = stat_report(s, {Rat(1, 100)}, {10, 20, 40});
  CHECK(r.verdict == Verdict::for_membership);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].below == 40);
  CHECK(r.rows[0].above == 0);
  CHECK(r.rows[0].unknown == 0);
  for (const CheckpointStat& c : r.rows[0].exceptional) CHECK(c.count == 0);
  CHECK(to_string(r.verdict) == "for");
}

TEST_CASE("a series pinned at 1/4 flips with the threshold") {
  const NormSeries s = synth(std::vector(40, quarter()));
  const EvidenceReport against =
      stat_report(s, {Rat(1, 100)}, {20, 40});
  CHECK(against.verdict == Verdict::against);
  CHECK(against.rows[0].above == 40);
  CHECK(to_string(against.verdict) == "against");

  const EvidenceReport fore = stat_report(s, {Rat(3, 10)}, {20, 40});
  CHECK(fore.verdict == Verdict::for_membership);
  CHECK(fore.rows[0].below == 40);

  // The boundary threshold counts a closed enclosure as certified-above.
  const EvidenceReport edge = stat_report(s, {Rat(1, 4)}, {20, 40});
  CHECK(edge.rows[0].above == 40);
  CHECK(edge.verdict == Verdict::against);
}

TEST_CASE("exceptional indices inside the predicted set do not count") {
  // Entries 1..10 sit at 1/4, the rest are small.
  std::vector<std::pair<std::int64_t, std::int64_t>> vals(100, tiny());
  for (size_t i = 0; i < 10; ++i) vals[i] = quarter();
  const NormSeries s = synth(vals);

  std::vector<long long> head;
  for (long long v = 1; v <= 10; ++v) head.push_back(v);
  const IndexSet excl = make_index_set(head, "first-ten");

  const EvidenceReport r =
      stat_report(s, {Rat(1, 100)}, {50, 100}, excl);
  CHECK(r.verdict == Verdict::for_membership);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].exceptional.back().count == 10);
  CHECK(r.rows[0].residual.back().count == 0);
  CHECK(r.rows[0].certified_above.back().count == 0);
  REQUIRE(r.exclusion.has_value());
  CHECK(r.exclusion->profile.back().ratio == Rat(1, 10));
  CHECK(r.exclusion->nonincreasing);

  // Without the exclusion the same series is condemned.
  const EvidenceReport raw = stat_report(s, {Rat(1, 100)}, {50, 100});
  CHECK(raw.verdict == Verdict::against);
}

TEST_CASE("straddling entries block both verdicts") {
  // Eight of a hundred enclosures straddle the threshold: not certified
  // below (so the residual stays at 8%), not certified above (so no
  // condemnation).
  std::vector<std::pair<std::int64_t, std::int64_t>> vals(100, tiny());
  for (size_t i = 20; i < 28; ++i) vals[i] = {0, kQ / 4};
  const NormSeries s = synth(vals);
  const EvidenceReport r = stat_report(s, {Rat(1, 100)}, {50, 100});
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK(r.rows[0].unknown == 8);
  CHECK(r.rows[0].certified_above.back().count == 0);
}

TEST_CASE("a residual that grows at the tail is not accepted") {
  std::vector<std::pair<std::int64_t, std::int64_t>> vals(100, tiny());
  for (size_t i = 50; i < 55; ++i) vals[i] = quarter();  // late exceptions
  const NormSeries s = synth(vals);
  const EvidenceReport r = stat_report(s, {Rat(1, 100)}, {50, 100});
  CHECK(r.rows[0].residual.back().ratio == Rat(5, 100));  // under the bar
  CHECK_FALSE(r.rows[0].residual_nonincreasing);
  CHECK(r.verdict == Verdict::inconclusive);
}

TEST_CASE("unknown entries count as exceptional") {
  NormSeries s = synth(std::vector(20, tiny()));
  for (size_t i = 0; i < 4; ++i) {
    s.entries[i].unknown = true;
    s.entries[i].lo_q = 0;
    s.entries[i].hi_q = kQ / 2;
  }
  const EvidenceReport r = stat_report(s, {Rat(1, 100)}, {20});
  CHECK(r.rows[0].unknown == 4);
  CHECK(r.rows[0].exceptional.back().count == 4);
  CHECK(r.verdict == Verdict::inconclusive);  // 0.2 residual, nothing above
}

TEST_CASE("grid and checkpoint validation") {
  const NormSeries s = synth(std::vector(10, tiny()));
  CHECK_THROWS_AS(stat_report(s, {}, {10}), std::invalid_argument);
  CHECK_THROWS_AS(stat_report(s, {Rat(0)}, {10}), std::invalid_argument);
  CHECK_THROWS_AS(stat_report(s, {Rat(3, 5)}, {10}), std::invalid_argument);
  CHECK_THROWS_AS(stat_report(s, {Rat(1, 4), Rat(1, 8)}, {10}),
                  std::invalid_argument);
  CHECK_THROWS_AS(stat_report(s, {Rat(1, 4)}, {}), std::invalid_argument);
  CHECK_THROWS_AS(stat_report(s, {Rat(1, 4)}, {0, 10}),
                  std::invalid_argument);
  CHECK_THROWS_AS(stat_report(s, {Rat(1, 4)}, {5, 5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(stat_report(s, {Rat(1, 4)}, {5, 11}),
                  std::invalid_argument);
  CHECK_NOTHROW(stat_report(s, {Rat(1, 4), Rat(1, 2)}, {5, 10}));
}

TEST_CASE("decay parameters ride along in the report") {
  const NormSeries s = synth(std::vector(10, tiny()));
  DecayParams p;
  p.lambda_hat = Rat(1, 2);
  p.m = 3;
  p.i0 = 2;
  const EvidenceReport r = stat_report(s, {Rat(1, 100)}, {10}, {}, p);
  REQUIRE(r.params.has_value());
  CHECK(r.params->lambda_hat == Rat(1, 2));
  CHECK(r.params->m == 3);
  CHECK(r.params->i0 == 2);
}

TEST_CASE("window check reduces the window and classifies three ways") {
  const NormSeries s = synth({{240 * kQ / 1000, 260 * kQ / 1000},
                              {490 * kQ / 1000, 500 * kQ / 1000},
                              {100 * kQ / 1000, 110 * kQ / 1000},
                              {200 * kQ / 1000, 300 * kQ / 1000}});
  const IndexSet at = make_index_set({1, 2, 3, 4}, "all");
  const WindowCheckResult r =
      window_check(s, at, Rat(17, 72), Rat(3, 4), Rat(1, 100));
  // [17/72, 3/4] folds to [17/72, 1/2] in distance-to-integer terms.
  CHECK(r.window.lo == Rat(17, 72));
  CHECK(r.window.hi == Rat(1, 2));
  CHECK(r.pass == 2);
  CHECK(r.fail == 1);
  CHECK(r.unknown == 1);
  CHECK_FALSE(r.all_pass);
  REQUIRE(r.entries.size() == 4);
  CHECK(r.entries[0].status == Ternary::yes);
  CHECK(r.entries[2].status == Ternary::no);
  CHECK(r.entries[3].status == Ternary::unknown);

  const WindowCheckResult good =
      window_check(s, make_index_set({1, 2}, "both"), Rat(17, 72), Rat(3, 4),
                   Rat(1, 100));
  CHECK(good.all_pass);

  CHECK_THROWS_AS(
      window_check(s, at, Rat(1, 2), Rat(1, 4), Rat(0)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      window_check(s, at, Rat(0), Rat(1, 4), Rat(-1)),
      std::invalid_argument);
}

TEST_CASE("cross-check separates predicted from stray exceptions") {
  std::vector<std::pair<std::int64_t, std::int64_t>> vals(12, tiny());
  vals[3] = quarter();              // index 4, predicted
  vals[8] = quarter();              // index 9, a violation when unpredicted
  vals[6] = {0, kQ / 4};            // index 7, undecided
  const NormSeries s = synth(vals);

  const CrossCheckResult partial =
      exception_cross_check(s, make_index_set({4}, "just-4"), Rat(1, 100));
  CHECK(partial.observed_above == 2);
  CHECK(partial.predicted_in_range == 1);
  CHECK(partial.violations == std::vector<long long>{9});
  CHECK_FALSE(partial.contained);
  CHECK(partial.unknown_outside == 1);
  CHECK_FALSE(partial.vacuous);

  const CrossCheckResult full =
      exception_cross_check(s, make_index_set({4, 9}, "both"), Rat(1, 100));
  CHECK(full.contained);
  CHECK(full.violations.empty());

  const CrossCheckResult clean = exception_cross_check(
      synth(std::vector(12, tiny())), make_index_set({4}, "j4"), Rat(1, 100));
  CHECK(clean.vacuous);
  CHECK(clean.contained);

  CHECK_THROWS_AS(exception_cross_check(s, make_index_set({}, "e"), Rat(0)),
                  std::invalid_argument);
}

TEST_CASE("decay margin from the contraction rate") {
  CHECK(decay_m(Rat(1, 2), Rat(1, 100)) == 9);  // 2^(1-m) < 1/200
  CHECK(decay_m(Rat(1, 10), Rat(1, 10)) == 2);
  CHECK_THROWS_AS(decay_m(Rat(1), Rat(1, 100)), std::invalid_argument);
  CHECK_THROWS_AS(decay_m(Rat(0), Rat(1, 100)), std::invalid_argument);
  CHECK_THROWS_AS(decay_m(Rat(1, 2), Rat(0)), std::invalid_argument);
}

TEST_CASE("family cutoff from the margin") {
  const IntervalFamily f = family_from_exponent(Rat(2));
  CHECK(family_growth_i0(f, 14, 1000) == 6);  // first length above 28 is 36
  CHECK(family_growth_i0(f, 1, 1000) == 2);   // first length above 2 is 4
  const IntervalFamily short_f = IntervalFamily::fixed("short", {1, 4}, {2, 6});
  CHECK_THROWS_AS(family_growth_i0(short_f, 2, 10), RefinementError);
  CHECK_THROWS_AS(family_growth_i0(f, 0, 10), std::invalid_argument);
}

TEST_CASE("derived parameters for the all-ones stream at 1e-2") {
  ContinuedFraction golden(CFDigits::golden());
  const IntervalFamily f = family_from_exponent(Rat(2));
  const DecayParams p = derive_decay_params(golden, f, Rat(1, 100), 400,
                                            100000);
  CHECK(fixed_decimal(p.lambda_hat, 10) == "0.6180339888");
  CHECK(p.m == 14);
  CHECK(p.i0 == 6);
}
