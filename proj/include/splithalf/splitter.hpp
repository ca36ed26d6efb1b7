#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "splithalf/score_matrix.hpp"

namespace splithalf {

/// Exact range for |S| x |S_sq| products.
__extension__ typedef unsigned __int128 UInt128;

/// Item allocation into sub-tests g and h. The two lists are row-aligned:
/// g_items[k] and h_items[k] form row k of the split table. Item indices are
/// 0-based.
struct Assignment {
  std::vector<std::size_t> g_items;
  std::vector<std::size_t> h_items;
  /// Unpaired item of an odd-length test; excluded from both halves.
  std::optional<std::size_t> dropped_item;

  std::size_t rows() const noexcept { return g_items.size(); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

enum class SplitCriterion {
  /// Minimise |S|, S = sum of row differences of item scores.
  AbsoluteSum,
  /// Minimise |S| x |S_sq| with cross-row swaps.
  Product,
};

enum class SwapPolicy {
  /// Apply the one row swap with the largest reduction per iteration.
  SingleBest,
  /// Swap every individually improving row at once; falls back to the
  /// single best swap when the combined move does not reduce |S|.
  Simultaneous,
};

std::string_view to_string(SplitCriterion c);
std::string_view to_string(SwapPolicy p);

struct SplitResult {
  Assignment assignment;
  SplitCriterion criterion = SplitCriterion::AbsoluteSum;
  /// sum_g - sum_h.
  std::int64_t S = 0;
  std::int64_t abs_S = 0;
  /// Sum over g of tau^2 minus sum over h of tau^2.
  std::int64_t S_sq = 0;
  std::int64_t sum_g = 0;
  std::int64_t sum_h = 0;
  std::size_t iterations = 0;
  /// Value of the minimised criterion: seed value first, then one entry per
  /// applied swap. Strictly decreasing.
  std::vector<double> history;

  /// |S| * |S_sq|, exact.
  UInt128 product() const;
};

/// Balance diagnostics for an arbitrary assignment.
SplitResult evaluate_assignment(const Assignment& a, const ItemScores& tau,
                                SplitCriterion criterion =
                                    SplitCriterion::AbsoluteSum);

/// Seed sub-tests: items sorted by score (descending, ties by ascending
/// index) and dealt in the repeating pattern g, h, h, g. For odd n the last
/// item in that order (the lowest scored) is dropped. Requires n >= 2.
Assignment seed_allocation(const ItemScores& tau);

/// Same-row swap refinement minimising |S|. Each iteration scores every row
/// swap by recomputing the revised sub-test sums, then applies the swap(s)
/// chosen by `policy`. Stops at |S| = 0, when no swap strictly reduces |S|,
/// or after `max_iter` iterations.
SplitResult swap_refine(const Assignment& a, const ItemScores& tau,
                        std::size_t max_iter,
                        SwapPolicy policy = SwapPolicy::SingleBest);

/// Cross-row refinement minimising |S| x |S_sq|: each iteration evaluates
/// exchanging g-row r1 with h-row r2 for all pairs and applies the best
/// strictly improving exchange (ties by lowest r1, then r2).
SplitResult product_refine(const Assignment& a, const ItemScores& tau,
                           std::size_t max_iter);

struct SplitOptions {
  SplitCriterion criterion = SplitCriterion::AbsoluteSum;
  SwapPolicy policy = SwapPolicy::SingleBest;
  /// Unset selects 10 * n.
  std::optional<std::size_t> max_iter;
};

/// item_totals -> seed_allocation -> refinement.
SplitResult split(const ItemScores& tau, const SplitOptions& options = {});
SplitResult split(const ScoreMatrix& m, const SplitOptions& options = {});

/// Exhaustive optimum over all balanced bipartitions; ties go to the
/// lexicographically smallest g item set. n must be even and at most 20,
/// otherwise Unsupported.
SplitResult brute_force_split(const ItemScores& tau);

inline constexpr std::size_t kBruteForceMaxItems = 20;

}  // namespace splithalf
