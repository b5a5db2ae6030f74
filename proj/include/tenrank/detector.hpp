#pragma once

#include "tenrank/numrank.hpp"
#include "tenrank/splitter.hpp"
#include "tenrank/tensor.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tenrank {

/// Rank bound and detectability verdict from the maximally square unfolding.
///
/// The unfolding rank never exceeds the CP rank. When the unfolding is
/// rank-deficient (rank < min(rows, cols)) the CP rank of a generic tensor
/// equals it and `detected` is set; otherwise `lower_bound` is only a floor
/// for a rank search.
struct RankReport {
    std::size_t lower_bound = 0;
    bool detected = false;
    std::optional<std::size_t> detected_rank;
    std::size_t r_max = 0;  ///< min(rows, cols) - 1
    ModeSplit split;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> singular_values;
    double tolerance_used = 0.0;
};

/// Order-1 tensors use a 1 x 1 "split" with rank 1 if any entry exceeds the
/// tolerance (default: size * eps * max|x|), else 0, and are always detected.
RankReport rank_lower_bound(const DenseTensor& t, std::optional<double> tol = std::nullopt);

/// Largest rank detectable for these extents, and the split that realizes it.
std::pair<std::size_t, ModeSplit> max_detectable_rank(std::span<const std::size_t> dims);

/// Rank of every contiguous unfolding n = 1..N-1 of `t` as stored.
std::vector<std::pair<std::size_t, RankResult>> all_n_ranks(const DenseTensor& t,
                                                            std::optional<double> tol = std::nullopt);

}  // namespace tenrank
