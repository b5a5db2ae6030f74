#pragma once

// Known-rank tensor synthesis, the detectability table and the Monte Carlo
// harness that checks the bound on synthesized tensors.

#include "tenrank/detector.hpp"
#include "tenrank/tensor.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string_view>
#include <vector>

namespace tenrank {

/// Generator used everywhere a seed is accepted.
using Rng = std::mt19937_64;
inline constexpr std::string_view rng_name = "mt19937_64";

enum class Distribution { gaussian, uniform };

std::string_view to_string(Distribution d);
Distribution parse_distribution(std::string_view name);

struct SynthResult {
    DenseTensor tensor;
    CpdModel model;
};

/// Random CP model with i.i.d. factor entries (standard normal, or uniform on
/// [-1, 1]) and unit weights, plus its dense tensor. Deterministic in `seed`.
/// Throws ParameterError when rank < 1.
SynthResult synth_tensor(const Dims& dims, std::size_t rank, std::uint64_t seed,
                         Distribution dist = Distribution::gaussian);

/// Same, drawing from a caller-owned generator.
CpdModel random_cpd_model(const Dims& dims, std::size_t rank, Rng& rng,
                          Distribution dist = Distribution::gaussian);

struct RmaxRow {
    std::size_t order;
    std::size_t extent;
    std::size_t r_max;
};

/// max_detectable_rank of the cubical [I]*N tensor for N in 2..n_max, I in 2..i_max.
std::vector<RmaxRow> emit_rmax_table(std::size_t i_max, std::size_t n_max);

/// CSV with header `N,I,R_max`, LF line endings.
void write_rmax_csv(std::ostream& out, const std::vector<RmaxRow>& rows);

// ------------------------------------------------------------ Monte Carlo

enum class RankRegime {
    detectable,  ///< R uniform in [1, r_max]
    overfull,    ///< R = r_max + excess
};

struct MonteCarloConfig {
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::vector<std::size_t> orders{3, 4, 5};
    std::size_t min_extent = 2;
    std::size_t max_extent = 6;
    RankRegime regime = RankRegime::detectable;
    std::size_t excess = 3;
    Distribution dist = Distribution::gaussian;
    std::size_t threads = 1;  ///< 0 picks hardware concurrency
};

struct TrialOutcome {
    std::size_t index = 0;
    Dims dims;
    std::size_t constructed_rank = 0;
    RankReport report;

    bool sound() const { return report.lower_bound <= constructed_rank; }
    bool rank_detected() const {
        return report.detected && report.detected_rank == constructed_rank;
    }
    bool full_rank_fallback() const {
        return !report.detected && report.lower_bound == std::min(report.rows, report.cols);
    }
};

struct MonteCarloSummary {
    std::size_t trials = 0;
    std::size_t detected_exact = 0;        ///< detected and detected_rank == R
    std::size_t soundness_violations = 0;  ///< lower_bound > R
    std::size_t full_rank_fallbacks = 0;   ///< not detected, full-rank unfolding
};

/// Each trial draws (N, dims, R, factors) from its own generator seeded by
/// (seed, trial index), so results do not depend on the thread count.
/// Outcomes are returned in trial order.
std::vector<TrialOutcome> run_monte_carlo(const MonteCarloConfig& cfg);

MonteCarloSummary summarize(const std::vector<TrialOutcome>& outcomes);

}  // namespace tenrank
