#pragma once

#include <string>
#include <vector>

#include "cafsim/model.hpp"
#include "cafsim/simulation.hpp"

namespace cafsim {

/// Caf: SUs adapt between min_bandwidth and max_bandwidth (aggregation plus
/// fragmentation). Cca: constant aggregation, the max_bandwidth ==
/// min_bandwidth special case.
enum class SharingMode { Caf, Cca };
const char* to_string(SharingMode mode);

struct Scenario {
    std::string label;
    SystemParams params;
    SharingMode mode = SharingMode::Caf;

    /// Scenario-level violations (Cca with unequal bandwidth bounds) plus the
    /// params' own.
    std::vector<std::string> violations() const;
};

enum class SweepVariable { PuArrivalRate, SuArrivalRate, PuServiceRate };
const char* to_string(SweepVariable variable);

/// Returns `base` with the swept variable replaced by `value`.
SystemParams with_sweep_value(const SystemParams& base, SweepVariable variable, double value);

enum class EngineSelection { Analytical, Simulation, Both };
const char* to_string(EngineSelection engines);

struct SweepSpec {
    std::vector<Scenario> scenarios;
    SweepVariable variable = SweepVariable::PuArrivalRate;
    std::vector<double> grid;  // strictly increasing; 0 allowed only for lambda_p
    EngineSelection engines = EngineSelection::Both;
    SimConfig sim;  // sim.params is ignored; scenario params are used per point
    double agreement_tolerance = 0.03;

    std::vector<std::string> violations() const;
};

/// The grid every sweep falls back to when none is configured:
/// lambda_p in {0.5, 1.0, ..., 5.0}.
std::vector<double> default_pu_arrival_grid();

}  // namespace cafsim
