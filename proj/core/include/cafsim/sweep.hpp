#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cafsim/results.hpp"
#include "cafsim/scenario.hpp"

namespace cafsim {

/// Evaluates every scenario at every grid point with the requested engines.
/// Rows come out in deterministic order: scenario-major, grid-minor,
/// analytical before simulation. Engine failures mark the row (ok = false,
/// nan metrics) without aborting the sweep. Simulation seeds derive from
/// (sim.seed, scenario label, grid index) — the label, not the position, so
/// deleting a scenario leaves every other scenario's rows unchanged.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

/// Per-point seed derivation used by run_sweep, exposed so a single point can
/// be reproduced outside a sweep.
std::uint64_t sweep_point_seed(std::uint64_t base_seed, std::string_view scenario_label,
                               std::size_t grid_index);

struct AgreementEntry {
    std::string scenario;
    double sweep_value = 0.0;
    std::string metric;
    double analytical = 0.0;
    double simulated = 0.0;
    double relative_error = 0.0;  // |sim - ana| / max(|ana|, floor)
    bool within_tolerance = true;
};

/// Analytical-vs-simulation comparison across rows that have both engines at
/// the same (scenario, sweep value). Probabilities use a 0.005 absolute floor
/// in the denominator. A nan estimate (e.g. dropping probability with no
/// admissions) fails its entry explicitly rather than vanishing.
struct AgreementReport {
    std::vector<AgreementEntry> entries;
    double tolerance = 0.03;
    double worst_error = 0.0;
    std::string worst_label;  // "scenario @ value / metric"
    bool passed = true;       // true for an empty comparison set
    bool empty = true;
};

AgreementReport agreement_report(const std::vector<ResultRow>& rows, double tolerance = 0.03);

void print_report(const AgreementReport& report, std::ostream& out);

}  // namespace cafsim
