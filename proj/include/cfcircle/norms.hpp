// Distance-to-integer sequences ||x * beta|| along the convergent
// denominators q_n and along the merged multiplier sequence x = r*q_n,
// 1 <= r <= a_{n+1}.  Every value is produced as a rigorous enclosure of
// controlled width and stored quantized on a fixed decimal grid so that all
// downstream counting is exact integer arithmetic.

#pragma once

#include <cfcircle/cf.hpp>
#include <cfcircle/ostrowski.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cfcircle {

/// Which multiplier sequence a series walks.
enum class Selector { qn, xn };

/// Tag of one merged-sequence position: the value is r * q_n.
struct MergedTag {
  long long n;
  long long r;
};

/// First N tags of the merged sequence, ordered by value (blocks n = 1, 2,
/// ... with r = 1..a_{n+1} inside each block).
std::vector<MergedTag> merged_tags(const ContinuedFraction& cf, long long N);

/// Denominator of the storage grid: enclosures are rounded outward onto
/// multiples of 1/10^15 before anything is counted.
inline constexpr std::int64_t kQuantDen = 1'000'000'000'000'000LL;

/// One evaluated series position.
struct SeriesEntry {
  long long index;     // 1-based position in the series
  long long n;         // convergent index of the block
  long long r;         // multiplier within the block (1 for selector qn)
  std::int64_t lo_q;   // lower enclosure endpoint, numerator over kQuantDen
  std::int64_t hi_q;   // upper enclosure endpoint, numerator over kQuantDen
  bool unknown;        // refinement failed; endpoints degrade to [0, 1/2]
};

/// Evaluated prefix of a norm sequence.
struct NormSeries {
  Selector selector = Selector::qn;
  long long N = 0;
  Rat target_width;
  std::string alpha_descriptor;
  std::string beta_descriptor;
  std::vector<SeriesEntry> entries;
};

/// Stored enclosure of an entry as exact rationals.
Enclosure entry_enclosure(const SeriesEntry& e);

/// Enclosure of ||q_n * beta|| with width <= target_width (before outward
/// quantization).
Enclosure qn_beta_norm(const ContinuedFraction& cf, const OstrowskiDigits& d,
                       long long n, const Rat& target_width);

/// Enclosure of ||r * q_n * beta||, same width contract.
Enclosure scaled_qn_beta_norm(const ContinuedFraction& cf,
                              const OstrowskiDigits& d, long long n,
                              long long r, const Rat& target_width);

/// Evaluates the first N positions of the selected sequence.  Entries whose
/// refinement fails are flagged unknown instead of aborting the series.
NormSeries norm_series(const ContinuedFraction& cf, const OstrowskiDigits& d,
                       Selector selector, long long N,
                       const Rat& target_width);

}  // namespace cfcircle
