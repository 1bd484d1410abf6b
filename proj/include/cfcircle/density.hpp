// Interval families of digit positions and natural-density bookkeeping on
// index sets.  A family is a sequence of integer intervals [s_i, t_i] with
// s_1 >= 1, gaps s_{i+1} = t_i + 2 (exactly one uncovered index between
// consecutive intervals), and lengths that grow without bound; the
// complement of its union along with everything before s_1 is the sparse
// exceptional region the rest of the library reasons about.

#pragma once

#include <cfcircle/numeric.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cfcircle {

/// Sorted, deduplicated set of nonnegative indices with a human-readable
/// descriptor.
struct IndexSet {
  std::vector<long long> indices;
  std::string descriptor;

  bool contains(long long v) const;
  long long count_leq(long long v) const;
};

/// Builds an IndexSet (sorts and deduplicates).
IndexSet make_index_set(std::vector<long long> indices,
                        std::string descriptor);

/// Union of two index sets.
IndexSet index_union(const IndexSet& a, const IndexSet& b,
                     std::string descriptor);

/// Family of intervals [s_i, t_i], 1-based.  Either a fixed finite list or a
/// rule backed by a length function (with the gap-2 spacing built in).
class IntervalFamily {
 public:
  /// Rule-backed family: interval i has length length_of(i) (so
  /// t_i = s_i + length_of(i)) and s_{i+1} = t_i + 2.
  static IntervalFamily from_rule(std::string name, long long s1,
                                  std::function<Int(long long)> length_of);
  /// Fixed family from explicit endpoints.
  static IntervalFamily fixed(std::string name, std::vector<long long> s,
                              std::vector<long long> t);

  long long s(long long i) const;  // i >= 1; extends rule-backed families
  long long t(long long i) const;
  /// Number of intervals the family can produce (finite families only).
  std::optional<long long> size() const;
  /// Number of intervals with s_i <= depth (materializes as needed).
  long long cover_count(long long depth) const;
  const std::string& name() const;
  std::string descriptor() const;

 private:
  struct Impl;
  explicit IntervalFamily(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

/// Family with s_1 = start and lengths floor(i^nu); requires nu > 1.
IntervalFamily family_from_exponent(const Rat& nu, long long start = 1);

/// Structural check over the first `horizon` intervals: ordering, the gap-2
/// spacing, and a growth diagnostic (the maximum length over the second half
/// must exceed the maximum over the first half).
struct FamilyCheck {
  bool ok = true;                  // ordering + spacing
  long long violation_index = -1;  // first bad interval when !ok
  std::string rule;                // "order" or "gap"
  bool growth_ok = true;           // length growth diagnostic
  long long horizon = 0;
  Int max_length;
};
FamilyCheck family_validate(const IntervalFamily& f, long long horizon);

/// Indices in [1, depth] not covered by any interval: the gap points t_i + 1
/// together with the head [1, s_1 - 1].
IndexSet complement_support(const IntervalFamily& f, long long depth);

/// Counting profile of an index set at increasing checkpoints.
struct DensityReport {
  std::vector<long long> checkpoints;
  std::vector<long long> counts;
  std::vector<Rat> ratios;
  bool ratios_nonincreasing = true;
};
DensityReport density_profile(const IndexSet& set,
                              std::vector<long long> checkpoints);

/// Predicted exceptional region for decay margin m and family cutoff i0
/// (both >= 1): the gap points {t_i + 1}, the head [1, s_{i0} - 1], and the
/// margins [s_j, s_j + m - 1] and [t_j - m + 1, t_j] for every j >= i0,
/// clipped to [1, depth].
IndexSet predicted_exception_set(const IntervalFamily& f, long long m,
                                 long long i0, long long depth);

}  // namespace cfcircle
