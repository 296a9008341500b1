// Command line front end: analytical sweeps, simulation sweeps, cross-engine
// agreement runs, and the self-validation suite.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cafsim/config.hpp"
#include "cafsim/format.hpp"
#include "cafsim/results.hpp"
#include "cafsim/simulation.hpp"
#include "cafsim/sweep.hpp"
#include "cafsim/validation.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> events;
    std::optional<int> replications;
    bool trace = false;
    bool map = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool sim_flags) {
    cmd->add_option("--config", opts.config_path, "Sweep description file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_path, "Result file (stdout when omitted)");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    if (sim_flags) {
        cmd->add_option("--seed", opts.seed, "Base seed override");
        cmd->add_option("--events", opts.events, "Events per replication override");
        cmd->add_option("--replications", opts.replications, "Replication count override");
        cmd->add_flag("--map", opts.map, "Track the per-channel spectrum map");
    }
}

cafsim::SweepSpec load_spec(const CommonOptions& opts, cafsim::EngineSelection engines) {
    cafsim::SweepSpec spec = cafsim::load_config(opts.config_path);
    spec.engines = engines;
    if (opts.seed) spec.sim.seed = *opts.seed;
    if (opts.events) {
        spec.sim.max_events = *opts.events;
        spec.sim.warmup_events = std::min(spec.sim.warmup_events, *opts.events / 10);
    }
    if (opts.replications) spec.sim.replications = *opts.replications;
    if (opts.map) spec.sim.track_spectrum_map = true;
    return spec;
}

cafsim::OutputFormat output_format(const CommonOptions& opts) {
    return opts.format == "json" ? cafsim::OutputFormat::Json : cafsim::OutputFormat::Csv;
}

int write_rows(const std::vector<cafsim::ResultRow>& rows, const CommonOptions& opts) {
    if (opts.out_path.empty())
        cafsim::emit_results(rows, output_format(opts), std::cout);
    else
        cafsim::emit_results(rows, output_format(opts), std::filesystem::path(opts.out_path));

    int failures = 0;
    for (const auto& row : rows)
        if (!row.ok) {
            ++failures;
            std::cerr << "row failed: " << row.scenario << " @ "
                      << cafsim::format_double(row.sweep_value) << " [" << row.engine
                      << "]: " << row.error << "\n";
        }
    return failures;
}

std::string sanitize(const std::string& label) {
    std::string out;
    for (char c : label)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
    return out;
}

// Traced simulation sweep: same points and seeds as run_sweep, but each
// point's replication 0 streams events to its own JSONL file.
std::vector<cafsim::ResultRow> run_traced_simulation(const cafsim::SweepSpec& spec,
                                                     const std::string& out_path) {
    const std::filesystem::path stem =
        out_path.empty() ? std::filesystem::path("trace")
                         : std::filesystem::path(out_path).replace_extension();
    std::vector<cafsim::ResultRow> rows;
    for (std::size_t s = 0; s < spec.scenarios.size(); ++s) {
        for (std::size_t g = 0; g < spec.grid.size(); ++g) {
            const auto& scenario = spec.scenarios[s];
            const double value = spec.grid[g];
            cafsim::ResultRow row;
            row.scenario = scenario.label;
            row.sweep_value = value;
            row.engine = "simulation";
            try {
                cafsim::SimConfig cfg = spec.sim;
                cfg.params = cafsim::with_sweep_value(scenario.params, spec.variable, value);
                cfg.seed = cafsim::sweep_point_seed(spec.sim.seed, scenario.label, g);
                const std::filesystem::path trace_path =
                    stem.string() + "-" + sanitize(scenario.label) + "-" +
                    cafsim::format_double(value, 6) + ".trace.jsonl";
                std::ofstream trace(trace_path);
                if (!trace) throw std::runtime_error("cannot open " + trace_path.string());
                const cafsim::SimResult result = cafsim::simulate(cfg, &trace);
                row.metrics = result.metrics;
                row.quality = std::max({result.half_width.blocking_probability,
                                        result.half_width.dropping_probability,
                                        result.half_width.utilization,
                                        result.half_width.throughput});
                std::cerr << "trace written: " << trace_path.string() << "\n";
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
                const double nan = std::numeric_limits<double>::quiet_NaN();
                row.metrics = cafsim::Metrics{nan, nan, nan, nan};
                row.quality = nan;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectrum-sharing model runner: exact Markov-chain analysis and "
                 "discrete-event simulation of adaptive channel aggregation/fragmentation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cafsim 1.0.0");

    CommonOptions analyze_opts, simulate_opts, sweep_opts;
    CLI::App* analyze = app.add_subcommand("analyze", "Analytical engine only");
    add_common_flags(analyze, analyze_opts, false);
    CLI::App* simulate = app.add_subcommand("simulate", "Simulation engine only");
    add_common_flags(simulate, simulate_opts, true);
    simulate->add_flag("--trace", simulate_opts.trace,
                       "Write one JSONL event trace per sweep point (replication 0)");
    CLI::App* sweep = app.add_subcommand("sweep", "Both engines plus an agreement report");
    add_common_flags(sweep, sweep_opts, true);
    CLI::App* validate = app.add_subcommand("validate", "Run the built-in validation suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate)) {
            const auto results = cafsim::run_validation_suite(std::cout);
            return cafsim::all_passed(results) ? 0 : 1;
        }
        if (app.got_subcommand(analyze)) {
            const auto spec = load_spec(analyze_opts, cafsim::EngineSelection::Analytical);
            return write_rows(cafsim::run_sweep(spec), analyze_opts) == 0 ? 0 : 1;
        }
        if (app.got_subcommand(simulate)) {
            const auto spec = load_spec(simulate_opts, cafsim::EngineSelection::Simulation);
            const auto rows = simulate_opts.trace
                                  ? run_traced_simulation(spec, simulate_opts.out_path)
                                  : cafsim::run_sweep(spec);
            return write_rows(rows, simulate_opts) == 0 ? 0 : 1;
        }
        const auto spec = load_spec(sweep_opts, cafsim::EngineSelection::Both);
        const auto rows = cafsim::run_sweep(spec);
        const int failures = write_rows(rows, sweep_opts);
        const auto report = cafsim::agreement_report(rows, spec.agreement_tolerance);
        cafsim::print_report(report, sweep_opts.out_path.empty() ? std::cerr : std::cout);
        return (failures == 0 && report.passed) ? 0 : 1;
    } catch (const cafsim::ConfigError& e) {
        std::cerr << "config error:\n" << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
