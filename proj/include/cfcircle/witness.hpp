// Constructions that pair a continued fraction with digit streams and
// interval families designed to realize specific convergence behaviour of
// ||x*beta|| along the q_n or merged multiplier sequences: gap-supported
// streams, half-digit streams over spiked alphas, sparse square supports,
// and the midrange block subsets of the merged sequence.

#pragma once

#include <cfcircle/cf.hpp>
#include <cfcircle/density.hpp>
#include <cfcircle/norms.hpp>
#include <cfcircle/ostrowski.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cfcircle {

/// Digit stream with d_k = 1 exactly at the gap points t_i + 1 of the
/// family (support inside the complement of the union of intervals).
OstrowskiDigits gap_family_witness(const ContinuedFraction& cf,
                                   const IntervalFamily& f);

/// Greedy scan for indices n_1 < n_2 < ... with a_{n_i} > 2, the partial
/// quotients a_{n_i} strictly increasing, and n_{i+1} - n_i >= i.
/// Pre: the digit stream is not declared bounded.  Throws RefinementError
/// when the scan budget is exhausted before `count` indices are found.
std::vector<long long> rising_digit_indices(const ContinuedFraction& cf,
                                            long long count,
                                            long long scan_budget = 4000000);

/// Interval family determined by block indices n_1 < n_2 < ...:
/// s_1 = 1, t_1 = n_2 - 2, and s_i = n_i, t_i = n_{i+1} - 2 for i >= 2.
/// Consumes indices[0..count-1] and yields count-1 intervals.
IntervalFamily family_from_block_indices(const std::vector<long long>& n,
                                         std::string name);

/// Digit stream supported on the gap points of family_from_block_indices:
/// d_{t_i + 1} = floor(a_{t_i + 2} / 2), i.e. half the partial quotient at
/// the block index n_{i+1} = t_i + 2.
OstrowskiDigits half_digit_witness(const ContinuedFraction& cf,
                                   const std::vector<long long>& n);

/// Digit stream with d_k = 1 at each support point produced by the
/// generator (strictly increasing indices; nullopt ends a finite support).
OstrowskiDigits sparse_support_witness(
    const ContinuedFraction& cf,
    std::function<std::optional<long long>(long long)> kth_support,
    std::string name);

/// Digit stream with d_k = 1 exactly at the perfect squares k = j^2.
OstrowskiDigits square_support_witness(const ContinuedFraction& cf);

/// Bundle for the spiked-alpha construction: a_k = 4k at perfect squares
/// k = j^2 and a_k = 1 elsewhere, block indices n_i = 3i, the derived
/// family (s_1 = 1, t_i = 9(i+1)^2 - 2), and digits 1 at the gap points.
struct SquareSpikeBundle {
  CFDigits alpha;
  IntervalFamily family;
  OstrowskiDigits beta;
};
SquareSpikeBundle square_spike_witness();

/// One merged-sequence value x = r*q_n with its tag.
struct MergedEntry {
  long long index;  // 1-based position
  Int x;
  long long n;
  long long r;
};
struct MergedSequence {
  std::vector<MergedEntry> entries;
};

/// First N merged values; strictly increasing by construction.
MergedSequence merged_sequence(const ContinuedFraction& cf, long long N);

/// Positions of the merged sequence whose tag (n, r) has n = t_i + 1 for an
/// interval index i in `gap_interval_indices` (i.e. n is a gap point of the
/// family) and whose multiplier sits in the middle band
/// ceil(a_{n+1}/4) <= r <= floor(3*a_{n+1}/4).
IndexSet midrange_block_set(const ContinuedFraction& cf,
                            const MergedSequence& xs, const IntervalFamily& f,
                            const std::vector<long long>& gap_interval_indices,
                            std::string descriptor);

/// Every i-th entry of the merged sequence (positions i, 2i, 3i, ...) as an
/// index set over series positions.
IndexSet stride_positions(long long N, long long stride,
                          std::string descriptor);

}  // namespace cfcircle
