#include "tenrank/cli.hpp"

#include "tenrank/detector.hpp"
#include "tenrank/errors.hpp"
#include "tenrank/synth.hpp"
#include "tenrank/tensor_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

namespace tenrank {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::size_t>& v, std::string_view sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string describe(const ModeSplit& sp) {
    return "s1={" + join(sp.s1, ",") + "} s2={" + join(sp.s2, ",") + "}";
}

json split_json(const ModeSplit& sp) {
    return {{"s1", sp.s1}, {"s2", sp.s2}, {"rows", sp.rows}, {"cols", sp.cols}};
}

json report_json(const RankReport& r) {
    json j;
    j["lower_bound"] = r.lower_bound;
    j["detected"] = r.detected;
    j["detected_rank"] = r.detected_rank ? json(*r.detected_rank) : json(nullptr);
    j["r_max"] = r.r_max;
    j["split"] = split_json(r.split);
    j["unfolding_shape"] = {r.rows, r.cols};
    j["singular_values"] = r.singular_values;
    j["tolerance_used"] = r.tolerance_used;
    return j;
}

std::optional<double> env_tolerance() {
    const char* raw = std::getenv("TENRANK_TOL");
    if (!raw || !*raw) return std::nullopt;
    const std::string_view s(raw);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !(v > 0.0))
        throw ParameterError("TENRANK_TOL must be a positive number, got '" + std::string(s) + "'");
    return v;
}

std::optional<double> effective_tolerance(const std::optional<double>& flag) {
    if (flag) {
        if (!(*flag > 0.0)) throw ParameterError("--tol must be positive");
        return flag;
    }
    return env_tolerance();
}

void print_values(std::ostream& out, const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_scalar(v[i]);
    out << '\n';
}

void print_report(std::ostream& out, const std::string& path, const DenseTensor& t,
                  const RankReport& r, bool verdict) {
    out << "file: " << path << '\n';
    out << "dims: " << join(t.dims(), " ") << '\n';
    out << "split: " << describe(r.split) << " (" << r.rows << " x " << r.cols << ")\n";
    out << "lower_bound: " << r.lower_bound << '\n';
    out << "r_max: " << r.r_max << '\n';
    out << "tolerance: " << format_scalar(r.tolerance_used) << '\n';
    if (verdict) {
        if (r.detected)
            out << "detected: yes, rank " << *r.detected_rank << '\n';
        else
            out << "detected: no, full-rank unfolding; rank search starts at " << r.lower_bound << '\n';
    }
    out << "singular_values: ";
    print_values(out, r.singular_values);
}

/// Writes to `path`, or to `fallback` when the path is empty or "-".
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    body(f);
    if (!f) throw Error("write to '" + path + "' failed");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tensor rank lower bounds and detectability from maximally square unfoldings",
                 "tenrank"};
    app.require_subcommand(1);

    // synth
    Dims synth_dims;
    std::size_t synth_rank = 0;
    std::uint64_t synth_seed = 0;
    std::string synth_dist = "gaussian";
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "Write a random tensor of known CP rank");
    synth->add_option("--dims", synth_dims, "Extents, e.g. 4,4,4")->required()->delimiter(',');
    synth->add_option("--rank", synth_rank, "Number of rank-1 terms")->required();
    synth->add_option("--seed", synth_seed, "Generator seed");
    synth->add_option("--dist", synth_dist, "gaussian or uniform");
    synth->add_option("--out", synth_out, "Output file (stdout if omitted)");

    // detect / bound
    std::string tensor_path;
    std::optional<double> tol_flag;
    bool as_json = false;
    auto* detect = app.add_subcommand("detect", "Rank lower bound and detectability verdict");
    detect->add_option("file", tensor_path, "Tensor file")->required();
    detect->add_option("--tol", tol_flag, "Singular value cutoff");
    detect->add_flag("--json", as_json, "Emit the report as JSON");
    auto* bound = app.add_subcommand("bound", "Rank lower bound of a tensor file");
    bound->add_option("file", tensor_path, "Tensor file")->required();
    bound->add_option("--tol", tol_flag, "Singular value cutoff");
    bound->add_flag("--json", as_json, "Emit the report as JSON");

    // split / rmax
    Dims split_dims;
    std::string strategy = "exact";
    auto* split = app.add_subcommand("split", "Most square bipartition of the modes");
    split->add_option("--dims", split_dims, "Extents, e.g. 2,3,5")->required()->delimiter(',');
    split->add_option("--strategy", strategy, "exact or sum-dp");
    split->add_flag("--json", as_json, "Emit JSON");
    auto* rmax = app.add_subcommand("rmax", "Maximum detectable rank for the given extents");
    rmax->add_option("--dims", split_dims, "Extents")->required()->delimiter(',');
    rmax->add_flag("--json", as_json, "Emit JSON");

    // figure
    std::size_t i_max = 20;
    std::size_t n_max = 11;
    std::string figure_out;
    auto* figure = app.add_subcommand("figure", "Detectable-rank table for cubical tensors (CSV)");
    figure->add_option("--imax", i_max, "Largest extent I");
    figure->add_option("--nmax", n_max, "Largest order N");
    figure->add_option("--out", figure_out, "Output CSV (stdout if omitted)");

    // nranks
    auto* nranks = app.add_subcommand("nranks", "Rank of every contiguous unfolding");
    nranks->add_option("file", tensor_path, "Tensor file")->required();
    nranks->add_option("--tol", tol_flag, "Singular value cutoff");
    nranks->add_flag("--json", as_json, "Emit JSON");

    // mc
    MonteCarloConfig mc_cfg;
    std::string regime = "detectable";
    bool mc_verbose = false;
    auto* mc = app.add_subcommand("mc", "Monte Carlo check of the bound on synthesized tensors");
    mc->add_option("--trials", mc_cfg.trials, "Number of tensors");
    mc->add_option("--seed", mc_cfg.seed, "Base seed");
    mc->add_option("--orders", mc_cfg.orders, "Tensor orders to draw from")->delimiter(',');
    mc->add_option("--dmin", mc_cfg.min_extent, "Smallest extent");
    mc->add_option("--dmax", mc_cfg.max_extent, "Largest extent");
    mc->add_option("--regime", regime, "detectable (R <= r_max) or overfull (R = r_max + excess)");
    mc->add_option("--excess", mc_cfg.excess, "Rank excess in the overfull regime");
    mc->add_option("--dist", synth_dist, "gaussian or uniform");
    mc->add_option("--threads", mc_cfg.threads, "Worker threads (0 = all cores)");
    mc->add_flag("--verbose", mc_verbose, "One line per trial");

    std::vector<const char*> argv{"tenrank"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*synth) {
            const Distribution dist = parse_distribution(synth_dist);
            const auto [t, model] = synth_tensor(synth_dims, synth_rank, synth_seed, dist);
            const Metadata meta{{"generator", std::string(rng_name)},
                                {"seed", std::to_string(synth_seed)},
                                {"rank", std::to_string(synth_rank)},
                                {"distribution", std::string(to_string(dist))}};
            with_output(synth_out, out, [&](std::ostream& os) { write_tensor(os, t, meta); });
            if (!synth_out.empty() && synth_out != "-")
                out << "wrote " << synth_out << " (dims " << join(synth_dims, "x") << ", rank "
                    << synth_rank << ", " << rng_name << " seed " << synth_seed << ")\n";
        } else if (*detect || *bound) {
            const TensorFile f = read_tensor_file(tensor_path);
            const RankReport r = rank_lower_bound(f.tensor, effective_tolerance(tol_flag));
            if (as_json) {
                out << report_json(r).dump(2) << '\n';
            } else {
                print_report(out, tensor_path, f.tensor, r, detect->parsed());
            }
        } else if (*split) {
            const SplitStrategy s = parse_split_strategy(strategy);
            const ModeSplit sp = balanced_split(split_dims, s);
            const auto [perm, k] = split_to_permutation(sp);
            std::vector<std::size_t> one_based;
            for (std::size_t m : perm.indices()) one_based.push_back(m + 1);
            if (as_json) {
                json j = split_json(sp);
                j["strategy"] = to_string(s);
                j["min_product"] = sp.min_product();
                j["permutation"] = one_based;
                j["split_point"] = k;
                out << j.dump(2) << '\n';
            } else {
                out << "strategy: " << to_string(s) << '\n'
                    << "split: " << describe(sp) << '\n'
                    << "shape: " << sp.rows << " x " << sp.cols << '\n'
                    << "min_product: " << sp.min_product() << '\n'
                    << "permutation: " << join(one_based, " ") << '\n'
                    << "split_point: " << k << '\n';
            }
        } else if (*rmax) {
            const auto [r, sp] = max_detectable_rank(split_dims);
            if (as_json) {
                out << json{{"r_max", r}, {"split", split_json(sp)}}.dump(2) << '\n';
            } else {
                out << "r_max: " << r << '\n'
                    << "split: " << describe(sp) << " (" << sp.rows << " x " << sp.cols << ")\n";
            }
        } else if (*figure) {
            const auto rows = emit_rmax_table(i_max, n_max);
            with_output(figure_out, out, [&](std::ostream& os) { write_rmax_csv(os, rows); });
        } else if (*nranks) {
            const TensorFile f = read_tensor_file(tensor_path);
            const auto ranks = all_n_ranks(f.tensor, effective_tolerance(tol_flag));
            if (as_json) {
                json j = json::array();
                for (const auto& [n, rr] : ranks)
                    j.push_back({{"n", n},
                                 {"rank", rr.rank},
                                 {"singular_values", rr.singular_values},
                                 {"tolerance_used", rr.tolerance_used}});
                out << j.dump(2) << '\n';
            } else {
                const auto& d = f.tensor.dims();
                out << "n rows cols rank\n";
                for (const auto& [n, rr] : ranks) {
                    const std::size_t rows = dims_product(std::span(d).first(n));
                    out << n << ' ' << rows << ' ' << f.tensor.size() / rows << ' ' << rr.rank << '\n';
                }
            }
        } else if (*mc) {
            if (regime == "detectable")
                mc_cfg.regime = RankRegime::detectable;
            else if (regime == "overfull")
                mc_cfg.regime = RankRegime::overfull;
            else
                throw ParameterError("unknown regime '" + regime + "'");
            mc_cfg.dist = parse_distribution(synth_dist);
            const auto outcomes = run_monte_carlo(mc_cfg);
            const auto s = summarize(outcomes);
            out << "# generator " << rng_name << '\n' << "# seed " << mc_cfg.seed << '\n';
            if (mc_verbose) {
                out << "trial dims R lower_bound detected r_max\n";
                for (const auto& o : outcomes)
                    out << o.index << ' ' << join(o.dims, "x") << ' ' << o.constructed_rank << ' '
                        << o.report.lower_bound << ' ' << (o.report.detected ? 1 : 0) << ' '
                        << o.report.r_max << '\n';
            }
            out << "trials: " << s.trials << '\n'
                << "detected_exact: " << s.detected_exact << '\n'
                << "full_rank_fallbacks: " << s.full_rank_fallbacks << '\n'
                << "soundness_violations: " << s.soundness_violations << '\n';
        }
    } catch (const FormatError& e) {
        err << "tenrank: " << e.what() << '\n';
        return exit_format;
    } catch (const NumericalError& e) {
        err << "tenrank: " << e.what() << '\n';
        return exit_numerical;
    } catch (const Error& e) {
        err << "tenrank: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_ok;
}

}  // namespace tenrank
