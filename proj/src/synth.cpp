#include "tenrank/synth.hpp"

#include "tenrank/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

namespace tenrank {

std::string_view to_string(Distribution d) {
    switch (d) {
        case Distribution::gaussian: return "gaussian";
        case Distribution::uniform: return "uniform";
    }
    return "unknown";
}

Distribution parse_distribution(std::string_view name) {
    if (name == "gaussian") return Distribution::gaussian;
    if (name == "uniform") return Distribution::uniform;
    throw ParameterError("unknown distribution '" + std::string(name) + "'");
}

CpdModel random_cpd_model(const Dims& dims, std::size_t rank, Rng& rng, Distribution dist) {
    if (rank < 1) throw ParameterError("rank must be at least 1");
    if (dims.empty()) throw ShapeError("tensor order must be at least 1");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);

    std::vector<Matrix> factors;
    factors.reserve(dims.size());
    for (std::size_t d : dims) {
        if (d == 0) throw ShapeError("extents must be positive");
        Matrix a(d, rank);
        for (double& v : a.data()) v = dist == Distribution::gaussian ? normal(rng) : uniform(rng);
        factors.push_back(std::move(a));
    }
    return CpdModel(std::move(factors));
}

SynthResult synth_tensor(const Dims& dims, std::size_t rank, std::uint64_t seed, Distribution dist) {
    Rng rng(seed);
    CpdModel model = random_cpd_model(dims, rank, rng, dist);
    DenseTensor t = cpd_synthesize(model);
    return {std::move(t), std::move(model)};
}

std::vector<RmaxRow> emit_rmax_table(std::size_t i_max, std::size_t n_max) {
    if (i_max < 2 || n_max < 2) throw ParameterError("table bounds must be at least 2");
    std::vector<RmaxRow> rows;
    for (std::size_t n = 2; n <= n_max; ++n)
        for (std::size_t i = 2; i <= i_max; ++i) {
            const Dims dims(n, i);
            rows.push_back({n, i, max_detectable_rank(dims).first});
        }
    return rows;
}

void write_rmax_csv(std::ostream& out, const std::vector<RmaxRow>& rows) {
    out << "N,I,R_max\n";
    for (const auto& r : rows) out << r.order << ',' << r.extent << ',' << r.r_max << '\n';
}

namespace {

TrialOutcome run_trial(const MonteCarloConfig& cfg, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    Rng rng(seq);

    TrialOutcome out;
    out.index = index;
    std::uniform_int_distribution<std::size_t> pick_order(0, cfg.orders.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_extent(cfg.min_extent, cfg.max_extent);
    out.dims.resize(cfg.orders[pick_order(rng)]);
    for (auto& d : out.dims) d = pick_extent(rng);

    const std::size_t r_max = max_detectable_rank(out.dims).first;
    if (cfg.regime == RankRegime::detectable) {
        std::uniform_int_distribution<std::size_t> pick_rank(1, std::max<std::size_t>(r_max, 1));
        out.constructed_rank = pick_rank(rng);
    } else {
        out.constructed_rank = r_max + cfg.excess;
    }

    const CpdModel model = random_cpd_model(out.dims, out.constructed_rank, rng, cfg.dist);
    out.report = rank_lower_bound(cpd_synthesize(model));
    return out;
}

}  // namespace

std::vector<TrialOutcome> run_monte_carlo(const MonteCarloConfig& cfg) {
    if (cfg.orders.empty()) throw ParameterError("no tensor orders given");
    for (std::size_t n : cfg.orders)
        if (n < 2) throw ParameterError("Monte Carlo tensor orders must be at least 2");
    if (cfg.min_extent < 1 || cfg.min_extent > cfg.max_extent)
        throw ParameterError("invalid extent range");

    std::vector<TrialOutcome> outcomes(cfg.trials);
    std::size_t workers = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(cfg.trials, 1));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < cfg.trials; i = next++) {
            try {
                outcomes[i] = run_trial(cfg, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return outcomes;
}

MonteCarloSummary summarize(const std::vector<TrialOutcome>& outcomes) {
    MonteCarloSummary s;
    s.trials = outcomes.size();
    for (const auto& o : outcomes) {
        s.detected_exact += o.rank_detected();
        s.soundness_violations += !o.sound();
        s.full_rank_fallbacks += o.full_rank_fallback();
    }
    return s;
}

}  // namespace tenrank
