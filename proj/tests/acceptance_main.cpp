// Runs the full validation suite and exits nonzero if any check fails.
// Each check prints one [PASS]/[FAIL] line with its runtime and findings.

#include <iostream>

#include "cafsim/validation.hpp"

int main() {
    const auto results = cafsim::run_validation_suite(std::cout);
    int failed = 0;
    for (const auto& r : results)
        if (!r.passed) ++failed;
    if (failed > 0) {
        std::cout << failed << " of " << results.size() << " checks failed\n";
        return 1;
    }
    std::cout << "all " << results.size() << " checks passed\n";
    return 0;
}
