#pragma once

#include "tenrank/tensor.hpp"

#include <string_view>
#include <utility>

namespace tenrank {

/// Ordered bipartition of the modes. Mode numbers are one-based and each
/// side is sorted ascending. Canonical orientation: rows <= cols.
struct ModeSplit {
    std::vector<std::size_t> s1;
    std::vector<std::size_t> s2;
    std::size_t rows = 0;  ///< product of extents over s1
    std::size_t cols = 0;  ///< product of extents over s2

    std::size_t min_product() const noexcept { return rows < cols ? rows : cols; }

    friend bool operator==(const ModeSplit&, const ModeSplit&) = default;
};

enum class SplitStrategy {
    exact,   ///< enumerate every bipartition
    sum_dp,  ///< balance the sums of extents (number partitioning DP)
};

std::string_view to_string(SplitStrategy s);
/// Accepts "exact", "sum_dp" and "sum-dp". Throws ParameterError otherwise.
SplitStrategy parse_split_strategy(std::string_view name);

inline constexpr std::size_t max_exact_split_order = 32;

/// Builds the canonical split from one side's modes: sorts both sides, computes
/// products and swaps so that rows <= cols (ties keep the lexicographically
/// smaller side first).
ModeSplit make_split(std::span<const std::size_t> dims, std::vector<std::size_t> side);

/// Bipartition whose unfolding is as square as possible.
///
/// `exact` maximizes min(rows, cols) over all 2^(N-1) - 1 bipartitions. Ties are
/// broken by smaller |rows - cols|, then by the lexicographically smallest s1.
/// `sum_dp` instead minimizes |sum(S1) - sum(S2)| by pseudo-polynomial DP over
/// the extents. That objective differs from the product one, so its result
/// can be strictly less square.
///
/// Throws InvalidSplitError when N < 2 and SizeGuardError when N exceeds
/// max_exact_split_order under the exact strategy.
ModeSplit balanced_split(std::span<const std::size_t> dims,
                         SplitStrategy strategy = SplitStrategy::exact);

/// Permutation s1 ++ s2 and split point |s1|; unfolding the permuted tensor at
/// that point gives a rows x cols matrix.
std::pair<ModePermutation, std::size_t> split_to_permutation(const ModeSplit& sp);

}  // namespace tenrank
