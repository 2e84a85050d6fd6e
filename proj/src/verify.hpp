#pragma once

// Identity-suite runner: every closed form, recursion and structural check
// packaged as a named suite producing per-check pass/fail records. Suites
// are deterministic in (config, seed) and independent of worker count.

#include <cstdint>
#include <string>
#include <vector>

#include "states.hpp"
#include "theta.hpp"

namespace sosdw {

struct CheckResult {
    std::string suite;      // suite name, e.g. "five-way"
    std::string check;      // individual check label
    int n = 0;
    std::string params;     // parameter digest for the report
    double max_rel_err = 0; // 0 for exact checks
    bool exact = false;
    bool passed = false;
    double ms = 0;
};

struct SuiteConfig {
    int n_max = 3;
    int trials = 20;
    uint64_t seed = 42;
    double tol = 1e-8;
    double nome = 0.2;        // default |p| for numeric suites
    Complex eta{0.30, 0.11};  // generic crossing parameter
    int state_cap = kDefaultStateCap;
    bool exact = true;        // run exact-arithmetic checks where available
    int threads = 1;
};

// All suite names in registry order.
std::vector<std::string> suite_names();

// Run the named suites ("all" or empty -> every suite). Unknown name ->
// UsageError. Results are ordered by (suite registry index, check index)
// regardless of cfg.threads.
std::vector<CheckResult> run_suites(const std::vector<std::string>& names,
                                    const SuiteConfig& cfg);

} // namespace sosdw
