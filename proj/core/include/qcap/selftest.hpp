#pragma once
// Built-in acceptance suite: fourteen numbered end-to-end checks with
// tolerances pinned in code. Each check returns a pass/fail verdict plus a
// one-line numeric detail, so the command-line runner and the test harness
// can both gate on the same implementation.

#include "qcap/conic.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qcap {

struct CheckResult {
    int index = 0;
    std::string label;
    bool pass = false;
    std::string detail;  // worst numbers observed, "%.9g" formatting
};

// Indices (1-based) and labels of every check, in execution order.
std::vector<std::pair<int, std::string>> acceptance_labels();

// Solver options used by every solve inside the suite. The environment
// variables QCAP_GAP_TOL and QCAP_FEAS_TOL override the defaults; loosening
// them is the negative control that makes the analytic-value checks fail.
SolverOptions acceptance_solver_options();

// Run the checks listed in `which` (1-based indices; empty runs all).
// Unknown indices are ignored. Results come back in execution order.
std::vector<CheckResult> run_acceptance(const std::vector<int>& which = {});

} // namespace qcap
