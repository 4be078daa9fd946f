// Acceptance gate: runs every acceptance criterion and prints one PASS/FAIL
// line per criterion. Exit status is non-zero when any criterion fails.

#include <iostream>

#include "acceptance_checks.hpp"

int main() {
    using namespace frenet_svd::acceptance;
    int failures = 0;
    for (const CheckResult& result : run_acceptance()) {
        std::cout << format_result(result, true) << '\n';
        if (!result.passed) ++failures;
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED") << '\n';
    return failures == 0 ? 0 : 1;
}
