#include "cafsim/scenario.hpp"

#include <cmath>

namespace cafsim {

const char* to_string(SharingMode mode) {
    return mode == SharingMode::Caf ? "caf" : "cca";
}

const char* to_string(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::PuArrivalRate: return "lambda_p";
        case SweepVariable::SuArrivalRate: return "lambda_s";
        case SweepVariable::PuServiceRate: return "mu_p";
    }
    return "unknown";
}

const char* to_string(EngineSelection engines) {
    switch (engines) {
        case EngineSelection::Analytical: return "analytical";
        case EngineSelection::Simulation: return "simulation";
        case EngineSelection::Both: return "both";
    }
    return "unknown";
}

std::vector<std::string> Scenario::violations() const {
    std::vector<std::string> v = params.violations();
    if (mode == SharingMode::Cca && params.min_bandwidth != params.max_bandwidth)
        v.push_back("mode: cca requires b_min == b_max");
    return v;
}

SystemParams with_sweep_value(const SystemParams& base, SweepVariable variable, double value) {
    SystemParams p = base;
    switch (variable) {
        case SweepVariable::PuArrivalRate: p.pu_arrival_rate = value; break;
        case SweepVariable::SuArrivalRate: p.su_arrival_rate = value; break;
        case SweepVariable::PuServiceRate: p.pu_service_rate = value; break;
    }
    return p;
}

std::vector<std::string> SweepSpec::violations() const {
    std::vector<std::string> v;
    if (scenarios.empty()) v.push_back("scenarios: at least one scenario is required");
    for (const auto& scenario : scenarios)
        for (const auto& issue : scenario.violations())
            v.push_back("scenario " + scenario.label + ": " + issue);
    // Labels identify scenarios in result rows, agreement pairing and seed
    // derivation, so they must be unique.
    for (std::size_t a = 0; a < scenarios.size(); ++a)
        for (std::size_t b = a + 1; b < scenarios.size(); ++b)
            if (scenarios[a].label == scenarios[b].label) {
                v.push_back("scenarios: duplicate label '" + scenarios[a].label + "'");
                b = scenarios.size();
            }
    if (grid.empty()) v.push_back("grid: must not be empty");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k])) v.push_back("grid: values must be finite");
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            v.push_back("grid: values must be strictly increasing");
            break;
        }
    }
    if (!grid.empty()) {
        const bool zero_ok = variable == SweepVariable::PuArrivalRate;
        if (zero_ok ? grid.front() < 0.0 : !(grid.front() > 0.0))
            v.push_back(std::string("grid: values must be ") + (zero_ok ? ">= 0" : "> 0") +
                        " for " + to_string(variable));
    }
    if (sim.max_events == 0) v.push_back("events: must be positive");
    if (sim.warmup_events >= sim.max_events && sim.max_events > 0)
        v.push_back("warmup: must be smaller than events");
    if (sim.replications < 1) v.push_back("replications: must be >= 1");
    if (!(agreement_tolerance > 0.0)) v.push_back("agreement_tolerance: must be > 0");
    return v;
}

std::vector<double> default_pu_arrival_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 10; ++k) grid.push_back(0.5 * k);
    return grid;
}

}  // namespace cafsim
