// fdrest command-line tool: FDR estimation and control from p-value CSVs,
// null-proportion estimation, plot emission, and the estimator benchmark.
//
// Exit codes: 0 success, 2 malformed input or config, 3 input empty after
// NA removal.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fdrest/adjust.hpp"
#include "fdrest/pi0.hpp"
#include "fdrest/plot.hpp"
#include "fdrest/pvalues.hpp"
#include "fdrest/sim.hpp"
#include "fdrest/table.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEmpty = 3;

struct CommonInputOptions {
    std::string input;
    bool na_rm = true;
    std::string sidedness = "two.sided";
};

struct AdjustOptions {
    CommonInputOptions in;
    std::string output;
    std::string format = "csv";
    std::string method = "BH";
    std::string by_corr = "positive";
    double threshold = 0.05;
    std::string estim_method = "set";
    double set_pi0 = 1.0;
    std::string hist_breaks = "scott";
    std::vector<double> lambda_grid;
    std::string ties_method = "random";
    std::uint64_t seed = 0;
    bool sort_results = false;
    bool just_fdr = false;
    double default_odds = 1.0;
    bool display = false;
};

fdrest::Pi0Spec make_pi0_spec(const std::string& estim_method, double set_pi0,
                              const std::string& hist_breaks,
                              const std::vector<double>& lambda_grid) {
    fdrest::Pi0Spec spec;
    if (estim_method == "set" || estim_method == "set-pi0" || estim_method == "set.pi0") {
        spec.mode = fdrest::Pi0Mode::set_value;
        spec.set_value = set_pi0;
    } else if (estim_method == "last-hist" || estim_method == "last.hist" ||
               estim_method == "last_hist") {
        spec.mode = fdrest::Pi0Mode::last_hist;
    } else if (estim_method == "storey") {
        spec.mode = fdrest::Pi0Mode::storey;
    } else {
        throw fdrest::input_error("unknown pi0 estimation method: " + estim_method);
    }
    if (hist_breaks != "scott") {
        try {
            spec.hist_breaks = std::stoi(hist_breaks);
        } catch (const std::exception&) {
            throw fdrest::input_error("hist-breaks must be 'scott' or an integer");
        }
    }
    if (!lambda_grid.empty()) spec.lambda_grid = lambda_grid;
    return spec;
}

fdrest::PValueSet load_pvalues(const fdrest::InputTable& table, bool na_rm) {
    try {
        return fdrest::PValueSet::from_values(
            table.pvalues, table.has_ids ? table.ids : std::vector<std::string>{},
            na_rm);
    } catch (const std::invalid_argument& e) {
        throw fdrest::input_error(e.what());
    }
}

// aligns the input z column with (possibly sorted) result rows
std::vector<double> align_z(const fdrest::InputTable& table,
                            const fdrest::FdrResult& result, bool na_rm) {
    std::vector<double> z_in;
    if (na_rm) {
        for (std::size_t i = 0; i < table.pvalues.size(); ++i) {
            if (!std::isnan(table.pvalues[i])) z_in.push_back(table.zvalues[i]);
        }
    } else {
        z_in = table.zvalues;
    }
    std::vector<double> aligned(result.order.size());
    for (std::size_t i = 0; i < result.order.size(); ++i) {
        aligned[i] = z_in[result.order[i]];
    }
    return aligned;
}

fdrest::ResultsTable run_adjust_pipeline(const AdjustOptions& opt,
                                         fdrest::InputTable& table) {
    table = fdrest::read_input_csv_file(opt.in.input);
    const auto pvals = load_pvalues(table, opt.in.na_rm);
    if (pvals.m() == 0) {
        throw fdrest::empty_input_error("no p-values left after NA removal");
    }

    fdrest::PfdrOptions pfdr;
    pfdr.method = fdrest::parse_method(opt.method);
    if (pfdr.method.kind == fdrest::MethodKind::by) {
        if (opt.by_corr == "negative") {
            pfdr.method.by_correlation = fdrest::ByCorrelation::negative;
        } else if (opt.by_corr != "positive") {
            throw fdrest::input_error("by-corr must be 'positive' or 'negative'");
        }
    }
    pfdr.threshold = opt.threshold;
    pfdr.pi0 = make_pi0_spec(opt.estim_method, opt.set_pi0, opt.hist_breaks,
                             opt.lambda_grid);
    pfdr.ties = fdrest::parse_tie_policy(opt.ties_method);
    pfdr.seed = opt.seed;
    pfdr.sort_results = opt.sort_results;
    pfdr.just_fdr = opt.just_fdr;

    const auto result = fdrest::p_fdr(pvals, pfdr);

    std::vector<double> z_override;
    if (table.has_z) z_override = align_z(table, result, opt.in.na_rm);
    return fdrest::build_results(result, fdrest::parse_sidedness(opt.in.sidedness),
                                 opt.default_odds,
                                 table.has_z ? &z_override : nullptr);
}

int cmd_adjust(const AdjustOptions& opt) {
    fdrest::InputTable table;
    const auto results = run_adjust_pipeline(opt, table);

    std::ofstream os(opt.output);
    if (!os) {
        std::cerr << "error: cannot open output file: " << opt.output << '\n';
        return kExitInput;
    }
    if (opt.format == "json") {
        fdrest::write_results_json(results, os);
    } else {
        fdrest::write_results_csv(results, os);
    }

    std::size_t rejected = 0;
    for (const auto& row : results.rows) {
        if (!row.missing && row.reject) ++rejected;
    }
    std::cout << "m=" << results.m << " rejected=";
    if (opt.just_fdr) {
        std::cout << "NA";  // no decisions in just-fdr mode
    } else {
        std::cout << rejected;
    }
    std::cout << " pi0=" << fdrest::format_fixed(results.pi0, 4)
              << " method=" << results.method
              << " threshold=" << fdrest::format_fixed(results.threshold, 4)
              << '\n';
    if (opt.display) fdrest::write_results_display(results, std::cout);
    return kExitOk;
}

struct Pi0Options {
    CommonInputOptions in;
    std::string estimator = "set";
    double value = 1.0;
    std::string hist_breaks = "scott";
    std::vector<double> lambda_grid;
    std::string diagnostics;
};

int cmd_pi0(const Pi0Options& opt) {
    const auto table = fdrest::read_input_csv_file(opt.in.input);
    const auto pvals = load_pvalues(table, opt.in.na_rm);
    if (pvals.m() == 0) {
        throw fdrest::empty_input_error("no p-values left after NA removal");
    }

    const auto spec = make_pi0_spec(opt.estimator, opt.value, opt.hist_breaks,
                                    opt.lambda_grid);
    const auto est = fdrest::get_pi0(pvals, spec);
    std::cout << fdrest::format_fixed(est.value, 4) << '\n';

    if (!opt.diagnostics.empty()) {
        std::ofstream os(opt.diagnostics);
        if (!os) {
            std::cerr << "error: cannot open diagnostics file: " << opt.diagnostics << '\n';
            return kExitInput;
        }
        if (const auto* hist =
                std::get_if<fdrest::HistogramDiagnostics>(&est.diagnostics)) {
            os << "bin,height\n";
            for (std::size_t b = 0; b < hist->bin_heights.size(); ++b) {
                os << (b + 1) << ',' << hist->bin_heights[b] << '\n';
            }
        } else if (const auto* st =
                       std::get_if<fdrest::StoreyDiagnostics>(&est.diagnostics)) {
            os << "lambda,raw_estimate\n";
            for (std::size_t k = 0; k < st->lambda_grid.size(); ++k) {
                os << fdrest::format_full(st->lambda_grid[k]) << ','
                   << fdrest::format_full(st->raw_estimates[k]) << '\n';
            }
            os << "# spline_value_at_1: " << fdrest::format_full(st->spline_value_at_1)
               << '\n';
        } else {
            os << "value\n" << fdrest::format_full(est.value) << '\n';
        }
    }
    return kExitOk;
}

struct PlotOptions {
    AdjustOptions adjust;  // computation settings when input is raw
    std::string output;
    std::string x_axis = "rank";
    bool raw_points = true;
    bool adj_points = true;
    bool fdr_points = true;
    bool rejection_line = true;
    bool threshold_line = true;
    std::vector<double> xlim;
    std::vector<double> ylim;
};

bool looks_like_results_csv(const std::string& path) {
    std::ifstream is(path);
    std::string header;
    if (!is || !std::getline(is, header)) return false;
    return header.find("adjusted_p") != std::string::npos &&
           header.find("fdr") != std::string::npos;
}

int cmd_plot(const PlotOptions& opt) {
    fdrest::ResultsTable results;
    if (looks_like_results_csv(opt.adjust.in.input)) {
        std::ifstream is(opt.adjust.in.input);
        results = fdrest::read_results_csv(is);
    } else {
        fdrest::InputTable table;
        results = run_adjust_pipeline(opt.adjust, table);
    }

    fdrest::PlotSpec spec;
    if (opt.x_axis == "rank") {
        spec.x_axis = fdrest::PlotSpec::Axis::rank;
    } else if (opt.x_axis == "zvalues") {
        spec.x_axis = fdrest::PlotSpec::Axis::zvalues;
    } else {
        throw fdrest::input_error("x-axis must be 'rank' or 'zvalues'");
    }
    spec.raw_points = opt.raw_points;
    spec.adjusted_points = opt.adj_points;
    spec.fdr_points = opt.fdr_points;
    spec.rejection_line = opt.rejection_line;
    spec.threshold_line = opt.threshold_line;
    spec.threshold = opt.adjust.threshold;
    if (opt.xlim.size() == 2) spec.xlim = {opt.xlim[0], opt.xlim[1]};
    if (opt.ylim.size() == 2) spec.ylim = {opt.ylim[0], opt.ylim[1]};

    const auto data = fdrest::make_plot_data(results, spec);

    std::ofstream os(opt.output);
    if (!os) {
        std::cerr << "error: cannot open output file: " << opt.output << '\n';
        return kExitInput;
    }
    if (opt.output.size() >= 4 &&
        opt.output.compare(opt.output.size() - 4, 4, ".svg") == 0) {
        fdrest::write_plot_svg(data, spec, os);
    } else {
        fdrest::write_plot_json(data, os);
    }
    return kExitOk;
}

struct SimulateOptions {
    std::string config;
    std::string output;
    std::size_t m = 100;
    std::vector<double> pi0_grid = {0.5, 0.8, 1.0};
    std::vector<std::string> alts = {"uniform_low(0.01)"};
    std::vector<std::string> estimators = {"last-hist", "storey"};
    std::string hist_breaks = "scott";
    std::vector<double> lambda_grid;
    int replications = 200;
    std::uint64_t master_seed = 88888;
    int threads = 1;
};

void apply_config_file(SimulateOptions& opt) {
    std::ifstream is(opt.config);
    if (!is) throw fdrest::input_error("cannot open config file: " + opt.config);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw fdrest::input_error(std::string("invalid config JSON: ") + e.what());
    }
    try {
        if (j.contains("m")) opt.m = j["m"].get<std::size_t>();
        if (j.contains("pi0_grid")) opt.pi0_grid = j["pi0_grid"].get<std::vector<double>>();
        if (j.contains("alts")) opt.alts = j["alts"].get<std::vector<std::string>>();
        if (j.contains("estimators"))
            opt.estimators = j["estimators"].get<std::vector<std::string>>();
        if (j.contains("replications")) opt.replications = j["replications"].get<int>();
        if (j.contains("master_seed"))
            opt.master_seed = j["master_seed"].get<std::uint64_t>();
        if (j.contains("threads")) opt.threads = j["threads"].get<int>();
        if (j.contains("hist_breaks"))
            opt.hist_breaks = j["hist_breaks"].is_number()
                                  ? std::to_string(j["hist_breaks"].get<int>())
                                  : j["hist_breaks"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw fdrest::input_error(std::string("invalid config value: ") + e.what());
    }
}

int cmd_simulate(SimulateOptions opt) {
    if (!opt.config.empty()) apply_config_file(opt);

    std::vector<fdrest::AlternativeSpec> alts;
    for (const auto& tag : opt.alts) {
        try {
            alts.push_back(fdrest::AlternativeSpec::parse(tag));
        } catch (const std::exception& e) {
            throw fdrest::input_error(e.what());
        }
    }
    std::vector<fdrest::Pi0Spec> estimators;
    for (const auto& name : opt.estimators) {
        estimators.push_back(
            make_pi0_spec(name, 1.0, opt.hist_breaks, opt.lambda_grid));
    }
    for (double pi0 : opt.pi0_grid) {
        if (pi0 < 0.0 || pi0 > 1.0) {
            throw fdrest::input_error("pi0 grid values must lie in [0, 1]");
        }
    }
    if (opt.replications < 1) throw fdrest::input_error("replications must be >= 1");
    if (opt.m < 2) throw fdrest::input_error("m must be at least 2");

    const auto table = fdrest::compare_pi0_estimators(
        opt.m, opt.pi0_grid, alts, estimators, opt.replications, opt.master_seed,
        opt.threads);

    std::ofstream os(opt.output);
    if (!os) {
        std::cerr << "error: cannot open output file: " << opt.output << '\n';
        return kExitInput;
    }
    fdrest::write_comparison_csv(table, os);
    std::cout << "cells=" << table.rows.size() << " R=" << opt.replications
              << " seed=" << opt.master_seed << '\n';
    return kExitOk;
}

void add_common_input(CLI::App* app, CommonInputOptions& in) {
    app->add_option("-i,--input", in.input, "input CSV with a 'p' column")
        ->required();
    app->add_flag("--na-rm,!--no-na-rm", in.na_rm,
                  "drop NA p-values before computing (default on)");
    app->add_option("--zvalues", in.sidedness,
                    "sidedness for the z transform: two.sided, greater, less");
}

void add_adjust_options(CLI::App* app, AdjustOptions& opt, bool need_output) {
    add_common_input(app, opt.in);
    if (need_output) {
        app->add_option("-o,--output", opt.output, "output file")->required();
        app->add_option("--format", opt.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    }
    app->add_option("--adjust-method", opt.method,
                    "BH, BY, Bonferroni, Holm, Hochberg or Sidak");
    app->add_option("--by-corr", opt.by_corr, "BY correlation: positive or negative");
    app->add_option("--threshold", opt.threshold, "control threshold in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--estim-method", opt.estim_method,
                    "pi0 estimation: set, last-hist or storey");
    app->add_option("--set-pi0", opt.set_pi0, "fixed pi0 for --estim-method set")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--hist-breaks", opt.hist_breaks, "'scott' or a bin count");
    app->add_option("--lambda-grid", opt.lambda_grid,
                    "storey lambda grid (ascending, in [0,1))")
        ->delimiter(',');
    app->add_option("--ties-method", opt.ties_method,
                    "first, last, average, min, max or random");
    app->add_option("--seed", opt.seed, "seed for the random ties method");
    app->add_flag("--sort-results", opt.sort_results, "order rows by ascending FDR");
    app->add_flag("--just-fdr", opt.just_fdr, "emit only the FDR column");
    app->add_option("--default-odds", opt.default_odds,
                    "pi1/pi0 odds for the lower bound");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"false discovery rate estimation and control"};
    app.require_subcommand(1);

    AdjustOptions adjust_opt;
    auto* adjust = app.add_subcommand(
        "adjust", "compute FDRs, adjusted p-values and reject decisions");
    add_adjust_options(adjust, adjust_opt, /*need_output=*/true);
    adjust->add_flag("--display", adjust_opt.display,
                     "print a 3-decimal table to stdout");

    Pi0Options pi0_opt;
    auto* pi0 = app.add_subcommand("pi0", "estimate the null proportion");
    add_common_input(pi0, pi0_opt.in);
    pi0->add_option("--estimator", pi0_opt.estimator, "set, last-hist or storey");
    pi0->add_option("--value", pi0_opt.value, "value for --estimator set")
        ->check(CLI::Range(0.0, 1.0));
    pi0->add_option("--hist-breaks", pi0_opt.hist_breaks, "'scott' or a bin count");
    pi0->add_option("--lambda-grid", pi0_opt.lambda_grid,
                    "storey lambda grid (ascending, in [0,1))")
        ->delimiter(',');
    pi0->add_option("--diagnostics", pi0_opt.diagnostics,
                    "write bin heights or lambda-grid estimates to this CSV");

    PlotOptions plot_opt;
    auto* plot = app.add_subcommand("plot", "emit plot data (JSON) or an SVG");
    add_adjust_options(plot, plot_opt.adjust, /*need_output=*/false);
    plot->add_option("-o,--output", plot_opt.output, "output .json or .svg file")
        ->required();
    plot->add_option("--x-axis", plot_opt.x_axis, "rank or zvalues");
    plot->add_flag("--raw-points,!--no-raw-points", plot_opt.raw_points,
                   "plot raw p-values");
    plot->add_flag("--adj-points,!--no-adj-points", plot_opt.adj_points,
                   "plot adjusted p-values");
    plot->add_flag("--fdr-points,!--no-fdr-points", plot_opt.fdr_points,
                   "plot FDR estimates");
    plot->add_flag("--rejection-line,!--no-rejection-line",
                   plot_opt.rejection_line, "plot the step-up rejection line");
    plot->add_flag("--threshold-line,!--no-threshold-line",
                   plot_opt.threshold_line, "plot the horizontal threshold line");
    plot->add_option("--xlim", plot_opt.xlim, "x-axis limits")->expected(2);
    plot->add_option("--ylim", plot_opt.ylim, "y-axis limits")->expected(2);

    SimulateOptions sim_opt;
    auto* sim = app.add_subcommand(
        "simulate", "benchmark pi0 estimators over a (pi0, alternative) grid");
    sim->add_option("--config", sim_opt.config, "JSON config file (overrides flags)");
    sim->add_option("-o,--output", sim_opt.output, "output CSV")->required();
    sim->add_option("--m", sim_opt.m, "features per sample");
    sim->add_option("--pi0-grid", sim_opt.pi0_grid, "true pi0 values")
        ->delimiter(',');
    sim->add_option("--alts", sim_opt.alts,
                    "alternatives, e.g. uniform_low(0.01) normal_shift(2,1)");
    sim->add_option("--estimators", sim_opt.estimators, "last-hist, storey, set")
        ->delimiter(',');
    sim->add_option("--hist-breaks", sim_opt.hist_breaks, "'scott' or a bin count");
    sim->add_option("--lambda-grid", sim_opt.lambda_grid, "storey lambda grid")
        ->delimiter(',');
    sim->add_option("-R,--replications", sim_opt.replications, "replications per cell");
    sim->add_option("--master-seed", sim_opt.master_seed, "master RNG seed");
    sim->add_option("--threads", sim_opt.threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*adjust) return cmd_adjust(adjust_opt);
        if (*pi0) return cmd_pi0(pi0_opt);
        if (*plot) return cmd_plot(plot_opt);
        if (*sim) return cmd_simulate(sim_opt);
    } catch (const fdrest::empty_input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEmpty;
    } catch (const fdrest::input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
