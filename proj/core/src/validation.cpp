#include "cafsim/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "cafsim/ctmc.hpp"
#include "cafsim/format.hpp"
#include "cafsim/metrics.hpp"
#include "cafsim/model.hpp"
#include "cafsim/results.hpp"
#include "cafsim/simulation.hpp"
#include "cafsim/spectrum_map.hpp"
#include "cafsim/sweep.hpp"

namespace cafsim {
namespace {

// Reference configuration used throughout: 12 channels, SU load
// lambda_s = 7.2 with unit holding and residence rates, PU service rate 0.45,
// PU arrival rate swept.
SystemParams reference_params(double b_min, double b_max, double pu_arrival_rate) {
    SystemParams p;
    p.channels = 12;
    p.min_bandwidth = b_min;
    p.max_bandwidth = b_max;
    p.pu_arrival_rate = pu_arrival_rate;
    p.su_arrival_rate = 7.2;
    p.pu_service_rate = 0.45;
    p.su_holding_rate = 1.0;
    p.su_residence_rate = 1.0;
    return p;
}

struct NamedScenario {
    const char* label;
    double b_min;
    double b_max;
};

// Labelled (B_M, B_m) as in CAF(4,2): adapt between 2 and 4 channel-widths.
constexpr NamedScenario kScenarios[] = {
    {"CAF(4,2)", 2, 4}, {"CCA(4,4)", 4, 4}, {"CCA(2,2)", 2, 2},
    {"CAF(4,1)", 1, 4}, {"CAF(3,2)", 2, 3},
};

Metrics analytic_metrics(const SystemParams& params, double* residual = nullptr) {
    const StateSpace space = enumerate_states(params);
    const Generator generator = build_generator(space, params);
    const SteadyState pi = solve_steady_state(generator);
    if (residual) *residual = pi.residual;
    return compute_metrics(pi, space, params);
}

std::string loc(const NamedScenario& scenario, double value) {
    return std::string(scenario.label) + " @ lambda_p=" + format_double(value, 6);
}

CheckResult check_state_enumeration() {
    CheckResult r{"state-space enumeration matches brute force", true, "", 0};
    SystemParams p = reference_params(2, 3, 1.0);
    p.channels = 4;
    const std::vector<SystemState> expected = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1},
                                               {2, 0}, {2, 1}, {3, 0}, {4, 0}};
    const StateSpace space = enumerate_states(p);
    if (space.states() != expected) {
        r.passed = false;
        r.detail = "4-channel space has " + std::to_string(space.size()) + " states, wanted 9";
        return r;
    }
    // Independent brute force straight from the capacity predicate.
    std::vector<SystemState> brute;
    for (int pu = 0; pu <= 4; ++pu)
        for (int su = 0; su <= 2; ++su)
            if (pu + 2 * su <= 4) brute.push_back({pu, su});
    if (brute != space.states()) {
        r.passed = false;
        r.detail = "enumeration disagrees with the brute-force filter";
        return r;
    }
    r.detail = "9 states, lexicographic, index map consistent";
    for (std::size_t k = 0; k < space.size(); ++k)
        if (space.index_of(space[k]) != static_cast<int>(k)) {
            r.passed = false;
            r.detail = "index map broken at position " + std::to_string(k);
        }
    return r;
}

CheckResult check_solver() {
    CheckResult r{"steady-state solver vs uniformization oracle", true, "", 0};
    double worst_sum = 0.0, worst_residual = 0.0, worst_diff = 0.0;
    for (const auto& scenario : kScenarios) {
        for (double value : default_pu_arrival_grid()) {
            const SystemParams params = reference_params(scenario.b_min, scenario.b_max, value);
            const StateSpace space = enumerate_states(params);
            const Generator generator = build_generator(space, params);
            SteadyState pi;
            try {
                pi = solve_steady_state(generator, 1e-9);
            } catch (const std::exception& e) {
                r.passed = false;
                r.detail = loc(scenario, value) + ": " + e.what();
                return r;
            }
            double sum = 0.0;
            for (double v : pi.probabilities) sum += v;
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
            worst_residual = std::max(worst_residual, pi.residual);
            const std::vector<double> oracle = uniformization_steady_state(generator);
            double diff = 0.0;
            for (std::size_t k = 0; k < oracle.size(); ++k)
                diff = std::max(diff, std::abs(oracle[k] - pi.probabilities[k]));
            worst_diff = std::max(worst_diff, diff);
            if (std::abs(sum - 1.0) > 1e-10 || pi.residual > 1e-9 || diff > 1e-8) {
                r.passed = false;
                r.detail = loc(scenario, value) + ": sum err " + format_double(sum - 1.0, 3) +
                           ", residual " + format_double(pi.residual, 3) + ", oracle diff " +
                           format_double(diff, 3);
                return r;
            }
        }
    }
    r.detail = "50 instances; worst sum err " + format_double(worst_sum, 3) + ", residual " +
               format_double(worst_residual, 3) + ", oracle diff " + format_double(worst_diff, 3);
    return r;
}

CheckResult check_closed_form() {
    CheckResult r{"single-channel closed form", true, "", 0};
    SystemParams p = reference_params(1, 1, 0.0);
    p.channels = 1;
    const StateSpace space = enumerate_states(p);
    const SteadyState pi = solve_steady_state(build_generator(space, p));
    const Metrics m = compute_metrics(pi, space, p);
    const double mu = p.su_holding_rate + p.su_residence_rate;
    const double pb = p.su_arrival_rate / (p.su_arrival_rate + mu);
    const struct {
        const char* name;
        double got, want;
    } values[] = {
        {"p_block", m.blocking_probability, pb},
        {"p_drop", m.dropping_probability, 0.0},
        {"utilization", m.utilization, pb},
        {"throughput", m.throughput, (1.0 - pb) * p.su_arrival_rate},
    };
    double worst = 0.0;
    for (const auto& v : values) {
        const double err = std::abs(v.got - v.want);
        worst = std::max(worst, err);
        if (err > 1e-12) {
            r.passed = false;
            r.detail = std::string(v.name) + " off by " + format_double(err, 3);
            return r;
        }
    }
    r.detail = "all four metrics within " + format_double(worst, 3) + " of closed form";
    return r;
}

CheckResult check_rate_conservation() {
    CheckResult r{"rate conservation identity", true, "", 0};
    double worst = 0.0;
    for (const auto& scenario : kScenarios) {
        for (double value : default_pu_arrival_grid()) {
            const SystemParams params = reference_params(scenario.b_min, scenario.b_max, value);
            const Metrics m = analytic_metrics(params);
            const double expected = (1.0 - m.blocking_probability) *
                                    (1.0 - m.dropping_probability) * params.su_arrival_rate;
            const double err = std::abs(m.throughput - expected);
            worst = std::max(worst, err);
            if (err > 1e-9) {
                r.passed = false;
                r.detail = loc(scenario, value) + ": |Th - (1-Pb)(1-Pd)lambda_s| = " +
                           format_double(err, 3);
                return r;
            }
        }
    }
    r.detail = "50 instances; worst identity error " + format_double(worst, 3);
    return r;
}

CheckResult check_cross_engine() {
    CheckResult r{"analytical vs simulation agreement", true, "", 0};
    const double grid[] = {0.5, 2.0, 4.0};
    double worst = 0.0;
    std::string worst_at;
    for (std::size_t s = 0; s < std::size(kScenarios); ++s) {
        const auto& scenario = kScenarios[s];
        for (std::size_t g = 0; g < std::size(grid); ++g) {
            const SystemParams params = reference_params(scenario.b_min, scenario.b_max, grid[g]);
            const Metrics ana = analytic_metrics(params);
            SimConfig cfg;
            cfg.params = params;
            cfg.max_events = 1'100'000;  // 1e6 post-warmup
            cfg.warmup_events = 100'000;
            cfg.replications = 20;
            cfg.seed = sweep_point_seed(1, scenario.label, g);
            const SimResult sim = simulate(cfg);
            const struct {
                const char* name;
                double a, b;
                bool probability;
            } pairs[] = {
                {"p_block", ana.blocking_probability, sim.metrics.blocking_probability, true},
                {"p_drop", ana.dropping_probability, sim.metrics.dropping_probability, true},
                {"utilization", ana.utilization, sim.metrics.utilization, false},
                {"throughput", ana.throughput, sim.metrics.throughput, false},
            };
            for (const auto& pair : pairs) {
                const double floor_value = pair.probability ? 0.005 : 1e-12;
                const double rel =
                    std::abs(pair.b - pair.a) / std::max(std::abs(pair.a), floor_value);
                if (rel > worst) {
                    worst = rel;
                    worst_at = loc(scenario, grid[g]) + " " + pair.name;
                }
                if (!(rel <= 0.03)) {
                    r.passed = false;
                    r.detail = loc(scenario, grid[g]) + " " + pair.name + ": rel err " +
                               format_double(rel, 3) + " > 3%";
                    return r;
                }
            }
        }
    }
    r.detail = "15 points x 20 replications x 1e6 events; worst rel err " +
               format_double(worst, 3) + " (" + worst_at + ")";
    return r;
}

CheckResult check_dominance() {
    CheckResult r{"adaptive sharing dominates both fixed aggregations", true, "", 0};
    double min_margin = 1e9;
    for (double value : default_pu_arrival_grid()) {
        const Metrics caf = analytic_metrics(reference_params(2, 4, value));
        const Metrics cca_max = analytic_metrics(reference_params(4, 4, value));
        const Metrics cca_min = analytic_metrics(reference_params(2, 2, value));
        for (const Metrics& cca : {cca_max, cca_min}) {
            const double margins[] = {
                cca.blocking_probability - caf.blocking_probability,
                cca.dropping_probability - caf.dropping_probability,
                caf.utilization - cca.utilization,
                caf.throughput - cca.throughput,
            };
            for (double margin : margins) {
                min_margin = std::min(min_margin, margin);
                if (!(margin > 0.0)) {
                    r.passed = false;
                    r.detail = "dominance fails at lambda_p=" + format_double(value, 6) +
                               " (margin " + format_double(margin, 3) + ")";
                    return r;
                }
            }
        }
    }
    r.detail = "strict on all four metrics at 10 grid points; smallest margin " +
               format_double(min_margin, 3);
    return r;
}

CheckResult check_trends() {
    CheckResult r{"blocking/dropping trends vs PU load and bandwidth bounds", true, "", 0};
    const auto grid = default_pu_arrival_grid();
    std::vector<std::string> findings;

    for (const auto& scenario : kScenarios) {
        double prev_pb = -1.0, prev_pd = -1.0;
        for (double value : grid) {
            const Metrics m =
                analytic_metrics(reference_params(scenario.b_min, scenario.b_max, value));
            if (m.blocking_probability < prev_pb - 1e-12 ||
                m.dropping_probability < prev_pd - 1e-12)
                findings.push_back(loc(scenario, value) + ": not nondecreasing in lambda_p");
            prev_pb = m.blocking_probability;
            prev_pd = m.dropping_probability;
        }
    }

    for (double value : grid) {
        const Metrics wide = analytic_metrics(reference_params(1, 4, value));   // b_min 2 -> 1
        const Metrics base = analytic_metrics(reference_params(2, 4, value));
        const Metrics narrow = analytic_metrics(reference_params(2, 3, value)); // b_max 4 -> 3
        if (!(wide.blocking_probability < base.blocking_probability))
            findings.push_back("b_min 2->1 does not lower blocking at lambda_p=" +
                               format_double(value, 3));
        if (!(wide.dropping_probability < base.dropping_probability))
            findings.push_back("b_min 2->1 raises dropping at lambda_p=" +
                               format_double(value, 3) + " (" +
                               format_double(wide.dropping_probability, 6) + " vs " +
                               format_double(base.dropping_probability, 6) + ")");
        if (!(base.blocking_probability < narrow.blocking_probability) ||
            !(base.dropping_probability < narrow.dropping_probability))
            findings.push_back("b_max 3->4 does not lower blocking/dropping at lambda_p=" +
                               format_double(value, 3));
    }

    if (findings.empty()) {
        r.detail = "monotone in lambda_p; b_min 2->1 and b_max 3->4 lower both probabilities "
                   "at every grid point";
        return r;
    }
    r.passed = false;
    r.detail = std::to_string(findings.size()) + " violation(s): " + findings.front();
    for (std::size_t k = 1; k < findings.size(); ++k) r.detail += "; " + findings[k];
    return r;
}

CheckResult check_utilization_crossover() {
    CheckResult r{"utilization gain crossover", true, "", 0};
    const auto grid = default_pu_arrival_grid();
    int low_index = -1, high_index = -1;
    std::vector<double> gain_bmax, gain_bmin;
    for (double value : grid) {
        const double caf42 = analytic_metrics(reference_params(2, 4, value)).utilization;
        const double caf32 = analytic_metrics(reference_params(2, 3, value)).utilization;
        const double caf41 = analytic_metrics(reference_params(1, 4, value)).utilization;
        gain_bmax.push_back(caf42 - caf32);  // raising B_M 3 -> 4
        gain_bmin.push_back(caf41 - caf42);  // lowering B_m 2 -> 1
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (low_index < 0 && gain_bmax[k] > gain_bmin[k]) low_index = static_cast<int>(k);
        if (gain_bmax[k] < gain_bmin[k]) high_index = static_cast<int>(k);
    }
    if (low_index < 0 || high_index < 0 || low_index >= high_index) {
        r.passed = false;
        r.detail = "no crossover on the default grid";
        return r;
    }
    r.detail = "raising b_max wins at lambda_p=" + format_double(grid[low_index], 3) +
               ", lowering b_min wins at lambda_p=" + format_double(grid[high_index], 3);
    return r;
}

CheckResult check_spectrum_map() {
    CheckResult r{"spectrum map invariants over a tracked run", true, "", 0};
    const SystemParams params = reference_params(2, 4, 2.0);
    Simulation sim(params, 7, /*track_map=*/true);
    int worst_total = 0, worst_per_su = 0;
    bool always_within_bound = true;
    const FragmentCensus empty_census = fragment_census(sim.spectrum_map(), params);
    worst_total = empty_census.total_fragments;
    for (int n = 0; n < 100'000; ++n) {
        sim.step();
        const SpectrumMap& map = sim.spectrum_map();
        const auto violations = spectrum_map_violations(map, sim.state(), params);
        if (!violations.empty()) {
            r.passed = false;
            r.detail = "event " + std::to_string(n) + ": " + violations.front();
            return r;
        }
        const FragmentCensus census = fragment_census(map, params);
        worst_total = std::max(worst_total, census.total_fragments);
        worst_per_su = std::max(worst_per_su, census.max_per_su);
        always_within_bound = always_within_bound && census.within_bound;
        if (census.max_per_su > 2) {
            r.passed = false;
            r.detail = "event " + std::to_string(n) + ": an SU holds " +
                       std::to_string(census.max_per_su) + " fragments";
            return r;
        }
    }
    r.detail = "1e5 events conserved; max fragments " + std::to_string(worst_total) +
               " (bound " + std::to_string(fragment_census(sim.spectrum_map(), params).bound) +
               ", " + (always_within_bound ? "never" : "sometimes") + " exceeded), max per SU " +
               std::to_string(worst_per_su);
    return r;
}

CheckResult check_determinism() {
    CheckResult r{"deterministic sweep output", true, "", 0};
    SweepSpec spec;
    spec.scenarios.push_back({"CAF(4,2)", reference_params(2, 4, 0.5), SharingMode::Caf});
    spec.scenarios.push_back({"CCA(2,2)", reference_params(2, 2, 0.5), SharingMode::Cca});
    spec.grid = {0.5, 2.0, 4.0};
    spec.engines = EngineSelection::Both;
    spec.sim.max_events = 40'000;
    spec.sim.warmup_events = 4'000;
    spec.sim.replications = 3;
    spec.sim.seed = 99;

    std::ostringstream csv1, csv2;
    emit_results(run_sweep(spec), OutputFormat::Csv, csv1);
    emit_results(run_sweep(spec), OutputFormat::Csv, csv2);
    if (csv1.str() != csv2.str()) {
        r.passed = false;
        r.detail = "two identical sweeps produced different CSV bytes";
        return r;
    }
    r.detail = "two sweeps, " + std::to_string(csv1.str().size()) + " CSV bytes, identical";
    return r;
}

}  // namespace

std::vector<CheckResult> run_validation_suite(std::ostream& out) {
    using Clock = std::chrono::steady_clock;
    const std::pair<std::function<CheckResult()>, double> checks[] = {
        {check_state_enumeration, 1.0},   // hard runtime bound, seconds
        {check_solver, 5.0},
        {check_closed_form, 0.0},
        {check_rate_conservation, 0.0},
        {check_cross_engine, 0.0},
        {check_dominance, 0.0},
        {check_trends, 0.0},
        {check_utilization_crossover, 0.0},
        {check_spectrum_map, 0.0},
        {check_determinism, 0.0},
    };
    std::vector<CheckResult> results;
    int index = 0;
    for (const auto& [check, budget] : checks) {
        const auto start = Clock::now();
        CheckResult result = check();
        result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (budget > 0.0 && result.seconds >= budget) {
            result.passed = false;
            result.detail += " [runtime " + format_double(result.seconds, 3) + " s over the " +
                             format_double(budget, 3) + " s budget]";
        }
        ++index;
        out << (result.passed ? "[PASS] " : "[FAIL] ") << (index < 10 ? "0" : "")
            << index << " " << result.name << " (" << format_double(result.seconds, 3)
            << " s): " << result.detail << "\n";
        out.flush();
        results.push_back(std::move(result));
    }
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

}  // namespace cafsim
