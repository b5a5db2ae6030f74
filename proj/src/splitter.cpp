#include "tenrank/splitter.hpp"

#include "tenrank/errors.hpp"

#include <algorithm>
#include <string>

namespace tenrank {

std::string_view to_string(SplitStrategy s) {
    switch (s) {
        case SplitStrategy::exact: return "exact";
        case SplitStrategy::sum_dp: return "sum_dp";
    }
    return "unknown";
}

SplitStrategy parse_split_strategy(std::string_view name) {
    if (name == "exact") return SplitStrategy::exact;
    if (name == "sum_dp" || name == "sum-dp") return SplitStrategy::sum_dp;
    throw ParameterError("unknown split strategy '" + std::string(name) + "'");
}

ModeSplit make_split(std::span<const std::size_t> dims, std::vector<std::size_t> side) {
    const std::size_t order = dims.size();
    std::vector<bool> in_side(order, false);
    for (std::size_t m : side) {
        if (m < 1 || m > order) throw IndexError(m, m, order);
        if (in_side[m - 1]) throw ArityError("mode " + std::to_string(m) + " listed twice");
        in_side[m - 1] = true;
    }
    ModeSplit sp;
    sp.rows = 1;
    sp.cols = 1;
    for (std::size_t n = 0; n < order; ++n) (in_side[n] ? sp.s1 : sp.s2).push_back(n + 1);
    if (sp.s1.empty() || sp.s2.empty())
        throw InvalidSplitError("both sides of a mode split must be non-empty");
    sp.rows = 1;
    for (std::size_t m : sp.s1) sp.rows *= dims[m - 1];
    sp.cols = dims_product(dims) / sp.rows;
    if (sp.rows > sp.cols || (sp.rows == sp.cols && sp.s2 < sp.s1)) {
        std::swap(sp.s1, sp.s2);
        std::swap(sp.rows, sp.cols);
    }
    return sp;
}

namespace {

void require_splittable(std::span<const std::size_t> dims) {
    if (dims.size() < 2)
        throw InvalidSplitError("a tensor of order " + std::to_string(dims.size()) +
                                " has no mode bipartition");
    for (std::size_t n = 0; n < dims.size(); ++n)
        if (dims[n] == 0)
            throw ShapeError("extent of mode " + std::to_string(n + 1) + " must be positive");
}

std::vector<std::size_t> modes_of(unsigned long long mask, std::size_t order) {
    std::vector<std::size_t> side;
    for (std::size_t n = 0; n < order; ++n)
        if (mask >> n & 1ULL) side.push_back(n + 1);
    return side;
}

ModeSplit exact_split(std::span<const std::size_t> dims) {
    const std::size_t order = dims.size();
    if (order > max_exact_split_order)
        throw SizeGuardError("exact split enumerates 2^(N-1) bipartitions; N = " +
                             std::to_string(order) + " exceeds the limit of " +
                             std::to_string(max_exact_split_order));
    const std::size_t total = dims_product(dims);

    // Mode 1 always sits on the enumerated side; the other N-1 modes run
    // through a Gray code so each step moves one mode across.
    const unsigned long long count = 1ULL << (order - 1);
    unsigned long long mask = 1;
    std::size_t side = dims[0];

    bool have_best = false;
    std::size_t best_min = 0;
    std::size_t best_gap = 0;
    ModeSplit best;

    for (unsigned long long g = 0; g < count; ++g) {
        if (g > 0) {
            const std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(g)) + 1;
            if (mask >> bit & 1ULL)
                side /= dims[bit];
            else
                side *= dims[bit];
            mask ^= 1ULL << bit;
        }
        const std::size_t other = total / side;
        if (mask == (1ULL << order) - 1) continue;  // complement empty
        const std::size_t lo = std::min(side, other);
        const std::size_t gap = std::max(side, other) - lo;
        if (have_best && (lo < best_min || (lo == best_min && gap > best_gap))) continue;

        ModeSplit cand = make_split(dims, modes_of(mask, order));
        if (!have_best || lo > best_min || gap < best_gap || cand.s1 < best.s1) {
            best = std::move(cand);
            best_min = lo;
            best_gap = gap;
            have_best = true;
        }
    }
    return best;
}

constexpr std::size_t max_dp_half_sum = std::size_t{1} << 26;

ModeSplit sum_dp_split(std::span<const std::size_t> dims) {
    const std::size_t order = dims.size();
    std::size_t sum = 0;
    for (std::size_t d : dims) sum += d;
    const std::size_t half = sum / 2;
    if (half > max_dp_half_sum)
        throw SizeGuardError("sum of extents too large for the partition DP");

    // reach[i][s]: some subset of the first i extents sums to s.
    const std::size_t width = half + 1;
    std::vector<char> reach((order + 1) * width, 0);
    reach[0] = 1;
    for (std::size_t i = 0; i < order; ++i) {
        const char* prev = &reach[i * width];
        char* cur = &reach[(i + 1) * width];
        for (std::size_t s = 0; s < width; ++s)
            cur[s] = prev[s] || (s >= dims[i] && prev[s - dims[i]]);
    }

    std::size_t target = half;
    while (!reach[order * width + target]) --target;

    std::vector<std::size_t> side;
    for (std::size_t i = order; i-- > 0;) {
        if (reach[i * width + target]) continue;  // reachable without extent i
        side.push_back(i + 1);
        target -= dims[i];
    }
    // The smallest extent is at most half the sum, so the side is non-empty
    // and leaves at least one mode on the other side.
    return make_split(dims, std::move(side));
}

}  // namespace

ModeSplit balanced_split(std::span<const std::size_t> dims, SplitStrategy strategy) {
    require_splittable(dims);
    switch (strategy) {
        case SplitStrategy::exact: return exact_split(dims);
        case SplitStrategy::sum_dp: return sum_dp_split(dims);
    }
    throw ParameterError("unknown split strategy");
}

std::pair<ModePermutation, std::size_t> split_to_permutation(const ModeSplit& sp) {
    std::vector<std::size_t> modes = sp.s1;
    modes.insert(modes.end(), sp.s2.begin(), sp.s2.end());
    return {ModePermutation::from_one_based(modes), sp.s1.size()};
}

}  // namespace tenrank
