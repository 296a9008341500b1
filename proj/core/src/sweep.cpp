#include "cafsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include "cafsim/ctmc.hpp"
#include "cafsim/format.hpp"
#include "cafsim/metrics.hpp"
#include "cafsim/simulation.hpp"

namespace cafsim {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kProbabilityFloor = 0.005;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001B3ull;
    }
    return hash;
}

ResultRow failed_row(const Scenario& scenario, double value, const char* engine,
                     const std::string& error) {
    ResultRow row;
    row.scenario = scenario.label;
    row.sweep_value = value;
    row.engine = engine;
    row.metrics = Metrics{kNan, kNan, kNan, kNan};
    row.quality = kNan;
    row.ok = false;
    row.error = error;
    return row;
}

ResultRow analytical_row(const Scenario& scenario, double value, const SystemParams& params) {
    try {
        const StateSpace space = enumerate_states(params);
        const Generator generator = build_generator(space, params);
        const SteadyState pi = solve_steady_state(generator);
        ResultRow row;
        row.scenario = scenario.label;
        row.sweep_value = value;
        row.engine = "analytical";
        row.metrics = compute_metrics(pi, space, params);
        row.quality = pi.residual;
        return row;
    } catch (const std::exception& e) {
        return failed_row(scenario, value, "analytical", e.what());
    }
}

ResultRow simulation_row(const Scenario& scenario, double value, const SystemParams& params,
                         const SimConfig& sim_settings, std::uint64_t seed) {
    try {
        SimConfig cfg = sim_settings;
        cfg.params = params;
        cfg.seed = seed;
        const SimResult result = simulate(cfg);
        ResultRow row;
        row.scenario = scenario.label;
        row.sweep_value = value;
        row.engine = "simulation";
        row.metrics = result.metrics;
        row.quality = std::max({result.half_width.blocking_probability,
                                result.half_width.dropping_probability,
                                result.half_width.utilization, result.half_width.throughput});
        return row;
    } catch (const std::exception& e) {
        return failed_row(scenario, value, "simulation", e.what());
    }
}

}  // namespace

std::uint64_t sweep_point_seed(std::uint64_t base_seed, std::string_view scenario_label,
                               std::size_t grid_index) {
    return splitmix64(splitmix64(base_seed ^ fnv1a64(scenario_label)) + grid_index + 1);
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
    if (auto v = spec.violations(); !v.empty()) {
        std::string msg = "run_sweep: invalid spec:";
        for (const auto& e : v) msg += " " + e + ";";
        throw std::invalid_argument(msg);
    }
    const bool analytical =
        spec.engines == EngineSelection::Analytical || spec.engines == EngineSelection::Both;
    const bool simulation =
        spec.engines == EngineSelection::Simulation || spec.engines == EngineSelection::Both;

    std::vector<ResultRow> rows;
    for (const Scenario& scenario : spec.scenarios) {
        for (std::size_t g = 0; g < spec.grid.size(); ++g) {
            const double value = spec.grid[g];
            const SystemParams params = with_sweep_value(scenario.params, spec.variable, value);
            if (analytical) rows.push_back(analytical_row(scenario, value, params));
            if (simulation)
                rows.push_back(simulation_row(scenario, value, params, spec.sim,
                                              sweep_point_seed(spec.sim.seed, scenario.label, g)));
        }
    }
    return rows;
}

AgreementReport agreement_report(const std::vector<ResultRow>& rows, double tolerance) {
    AgreementReport report;
    report.tolerance = tolerance;

    std::map<std::pair<std::string, double>, const ResultRow*> analytical;
    for (const auto& row : rows)
        if (row.engine == "analytical" && row.ok)
            analytical[{row.scenario, row.sweep_value}] = &row;

    for (const auto& row : rows) {
        if (row.engine != "simulation" || !row.ok) continue;
        const auto it = analytical.find({row.scenario, row.sweep_value});
        if (it == analytical.end()) continue;
        const Metrics& ana = it->second->metrics;
        const Metrics& sim = row.metrics;
        const struct {
            const char* name;
            double a, s;
            bool probability;
        } pairs[] = {
            {"p_block", ana.blocking_probability, sim.blocking_probability, true},
            {"p_drop", ana.dropping_probability, sim.dropping_probability, true},
            {"utilization", ana.utilization, sim.utilization, false},
            {"throughput", ana.throughput, sim.throughput, false},
        };
        for (const auto& pair : pairs) {
            AgreementEntry entry;
            entry.scenario = row.scenario;
            entry.sweep_value = row.sweep_value;
            entry.metric = pair.name;
            entry.analytical = pair.a;
            entry.simulated = pair.s;
            const double floor_value = pair.probability ? kProbabilityFloor : 1e-12;
            entry.relative_error =
                std::abs(pair.s - pair.a) / std::max(std::abs(pair.a), floor_value);
            // nan estimates (undefined or non-converged) must fail loudly.
            entry.within_tolerance =
                std::isfinite(entry.relative_error) && entry.relative_error <= tolerance;
            const double comparable = std::isfinite(entry.relative_error)
                                          ? entry.relative_error
                                          : std::numeric_limits<double>::infinity();
            if (comparable > report.worst_error) {
                report.worst_error = comparable;
                report.worst_label = entry.scenario + " @ " + format_double(entry.sweep_value) +
                                     " / " + entry.metric;
            }
            report.passed = report.passed && entry.within_tolerance;
            report.empty = false;
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

void print_report(const AgreementReport& report, std::ostream& out) {
    if (report.empty) {
        out << "agreement: no (scenario, point) evaluated by both engines\n";
        return;
    }
    int failures = 0;
    for (const auto& entry : report.entries)
        if (!entry.within_tolerance) {
            ++failures;
            out << "agreement FAIL " << entry.scenario << " @ "
                << format_double(entry.sweep_value) << " " << entry.metric
                << ": analytical=" << format_double(entry.analytical)
                << " simulated=" << format_double(entry.simulated)
                << " rel_err=" << format_double(entry.relative_error, 3) << "\n";
        }
    out << "agreement: " << report.entries.size() << " comparisons, " << failures
        << " over tolerance " << format_double(report.tolerance, 3)
        << "; worst rel_err=" << format_double(report.worst_error, 3) << " ("
        << report.worst_label << ") -> " << (report.passed ? "PASS" : "FAIL") << "\n";
}

}  // namespace cafsim
