#include "tenrank/detector.hpp"

#include "tenrank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tenrank {

namespace {

RankReport order_one_report(const DenseTensor& t, std::optional<double> tol) {
    if (tol && !(*tol > 0.0 && std::isfinite(*tol)))
        throw ParameterError("rank tolerance must be a positive finite number");
    double peak = 0.0;
    for (double v : t.data()) {
        if (!std::isfinite(v)) throw NumericalError("tensor contains non-finite entries", t.size(), 1);
        peak = std::max(peak, std::abs(v));
    }
    RankReport r;
    r.tolerance_used = tol ? *tol
                           : std::max(default_tolerance(t.size(), 1, peak),
                                      std::numeric_limits<double>::min());
    r.lower_bound = peak > r.tolerance_used ? 1 : 0;
    r.detected = true;
    r.detected_rank = r.lower_bound;
    r.split.s1 = {1};
    r.split.rows = t.size();
    r.split.cols = 1;
    r.rows = t.size();
    r.cols = 1;
    r.singular_values = {peak};
    return r;
}

}  // namespace

RankReport rank_lower_bound(const DenseTensor& t, std::optional<double> tol) {
    if (t.order() == 1) return order_one_report(t, tol);

    RankReport r;
    r.split = balanced_split(t.dims(), SplitStrategy::exact);
    const auto [perm, k] = split_to_permutation(r.split);
    const Matrix unfolding = unfold(permute_modes(t, perm), k);
    RankResult rr = matrix_rank(unfolding, tol);

    r.rows = unfolding.rows();
    r.cols = unfolding.cols();
    const std::size_t full = std::min(r.rows, r.cols);
    r.r_max = full - 1;
    r.lower_bound = rr.rank;
    r.detected = rr.rank < full;
    if (r.detected) r.detected_rank = rr.rank;
    r.singular_values = std::move(rr.singular_values);
    r.tolerance_used = rr.tolerance_used;
    return r;
}

std::pair<std::size_t, ModeSplit> max_detectable_rank(std::span<const std::size_t> dims) {
    ModeSplit sp = balanced_split(dims, SplitStrategy::exact);
    return {sp.min_product() - 1, std::move(sp)};
}

std::vector<std::pair<std::size_t, RankResult>> all_n_ranks(const DenseTensor& t,
                                                            std::optional<double> tol) {
    if (t.order() < 2)
        throw InvalidSplitError("a tensor of order " + std::to_string(t.order()) +
                                " has no unfoldings");
    std::vector<std::pair<std::size_t, RankResult>> out;
    out.reserve(t.order() - 1);
    for (std::size_t n = 1; n < t.order(); ++n) out.emplace_back(n, matrix_rank(unfold(t, n), tol));
    return out;
}

}  // namespace tenrank
