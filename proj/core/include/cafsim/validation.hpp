#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cafsim {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// End-to-end self-validation: state-space and solver oracles, closed forms,
/// conservation identities, analytical-vs-simulation reproduction of the
/// reference comparison (adaptive sharing vs constant aggregation), trend and
/// crossover checks, spectrum-map invariants, and output determinism. Prints
/// one [PASS]/[FAIL] line per check to `out` as it runs. The full suite is
/// minutes of single-core work; the simulation checks dominate.
std::vector<CheckResult> run_validation_suite(std::ostream& out);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace cafsim
