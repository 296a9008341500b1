#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cafsim/results.hpp"
#include "cafsim/sweep.hpp"
#include "helpers.hpp"

using namespace cafsim;
using test::reference_params;

namespace {

SweepSpec small_spec(EngineSelection engines) {
    SweepSpec spec;
    spec.scenarios.push_back({"CAF(4,2)", reference_params(2, 4, 1.0), SharingMode::Caf});
    spec.scenarios.push_back({"CCA(2,2)", reference_params(2, 2, 1.0), SharingMode::Cca});
    spec.variable = SweepVariable::PuArrivalRate;
    spec.grid = {0.0, 1.0, 3.0};
    spec.engines = engines;
    spec.sim.max_events = 30'000;
    spec.sim.warmup_events = 3'000;
    spec.sim.replications = 3;
    spec.sim.seed = 7;
    return spec;
}

}  // namespace

TEST_CASE("analytical sweeps emit one ordered row per scenario and point") {
    const auto rows = run_sweep(small_spec(EngineSelection::Analytical));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].scenario == "CAF(4,2)");
    CHECK(rows[0].sweep_value == 0.0);
    CHECK(rows[2].sweep_value == 3.0);
    CHECK(rows[3].scenario == "CCA(2,2)");
    for (const auto& row : rows) {
        CHECK(row.ok);
        CHECK(row.engine == "analytical");
        CHECK(row.quality <= 1e-9);  // solver residual
    }
    // No PU arrivals, no drops.
    CHECK(rows[0].metrics.dropping_probability == 0.0);
    CHECK(rows[3].metrics.dropping_probability == 0.0);
}

TEST_CASE("both engines interleave deterministically and agree") {
    const SweepSpec spec = small_spec(EngineSelection::Both);
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].engine == "analytical");
    CHECK(rows[1].engine == "simulation");
    CHECK(rows[0].scenario == rows[1].scenario);
    CHECK(rows[0].sweep_value == rows[1].sweep_value);

    const auto again = run_sweep(spec);
    std::ostringstream a, b;
    emit_results(rows, OutputFormat::Csv, a);
    emit_results(again, OutputFormat::Csv, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("deleting a scenario leaves the other rows unchanged") {
    SweepSpec spec = small_spec(EngineSelection::Both);
    const auto full = run_sweep(spec);
    spec.scenarios.erase(spec.scenarios.begin());  // drop CAF(4,2)
    const auto reduced = run_sweep(spec);
    REQUIRE(reduced.size() == 6);
    for (std::size_t k = 0; k < reduced.size(); ++k) {
        const auto& lhs = reduced[k];
        const auto& rhs = full[6 + k];  // CCA(2,2) block of the full sweep
        CHECK(lhs.scenario == rhs.scenario);
        CHECK(lhs.engine == rhs.engine);
        CHECK(lhs.sweep_value == rhs.sweep_value);
        CHECK(lhs.metrics.blocking_probability == rhs.metrics.blocking_probability);
        CHECK(lhs.metrics.throughput == rhs.metrics.throughput);
    }
}

TEST_CASE("agreement report pairs engines and flags noisy runs") {
    SweepSpec spec = small_spec(EngineSelection::Both);
    spec.sim.max_events = 200'000;
    spec.sim.warmup_events = 20'000;
    spec.sim.replications = 6;
    const auto rows = run_sweep(spec);
    const AgreementReport report = agreement_report(rows, 0.05);
    CHECK(!report.empty);
    CHECK(report.entries.size() == 2 * 3 * 4);  // scenarios x points x metrics
    CHECK(report.passed);
    CHECK(report.worst_error < 0.05);

    // A starved simulation must be flagged, not silently accepted.
    SweepSpec tiny = small_spec(EngineSelection::Both);
    tiny.sim.max_events = 600;
    tiny.sim.warmup_events = 0;
    tiny.sim.replications = 2;
    const AgreementReport noisy = agreement_report(run_sweep(tiny), 0.0005);
    CHECK(!noisy.passed);

    std::ostringstream text;
    print_report(noisy, text);
    CHECK(text.str().find("FAIL") != std::string::npos);
}

TEST_CASE("analytical-only rows yield an explicitly empty report") {
    const auto rows = run_sweep(small_spec(EngineSelection::Analytical));
    const AgreementReport report = agreement_report(rows);
    CHECK(report.empty);
    CHECK(report.passed);
    CHECK(report.entries.empty());
    std::ostringstream text;
    print_report(report, text);
    CHECK(text.str().find("no (scenario, point)") != std::string::npos);
}

TEST_CASE("point seeds differ across scenarios, points and bases") {
    CHECK(sweep_point_seed(1, "a", 0) != sweep_point_seed(1, "a", 1));
    CHECK(sweep_point_seed(1, "a", 0) != sweep_point_seed(1, "b", 0));
    CHECK(sweep_point_seed(1, "a", 0) != sweep_point_seed(2, "a", 0));
}

TEST_CASE("invalid sweep specs are rejected") {
    SweepSpec spec = small_spec(EngineSelection::Both);
    spec.grid = {2.0, 1.0};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec = small_spec(EngineSelection::Both);
    spec.scenarios.clear();
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}
