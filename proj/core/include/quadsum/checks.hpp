#pragma once

#include <string>
#include <vector>

#include "quadsum/summation.hpp"

namespace quadsum {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;   // the quantity compared against the tolerance
    double tolerance = 0.0;
    double seconds = 0.0;
    std::string detail;
};

struct AcceptanceOptions {
    SummationConfig sum;
    unsigned seed = 20240915;
    bool include_theta = false;  // slow end-to-end experiment
};

// The individual criteria; each returns one pass/fail line of data.
CheckResult check_main_summation(const AcceptanceOptions& opt);        // 1
CheckResult check_f2_equivariance(const AcceptanceOptions& opt);       // 2
CheckResult check_cocycle(const AcceptanceOptions& opt);               // 3
CheckResult check_action_formulas(const AcceptanceOptions& opt);       // 4
CheckResult check_functional_equation(const AcceptanceOptions& opt);   // 5
CheckResult check_boundary_constants(const AcceptanceOptions& opt);    // 6
CheckResult check_invariance(const AcceptanceOptions& opt);            // 7
CheckResult check_scaling(const AcceptanceOptions& opt);               // 8
CheckResult check_counting(const AcceptanceOptions& opt);              // 9
CheckResult check_exact_oracles(const AcceptanceOptions& opt);         // 10
CheckResult check_theta_truncation(const AcceptanceOptions& opt);      // 11 (optional)

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opt);

// Module-invariant property suite (the `properties` front-end command):
// smaller randomized versions of the per-module invariants.
std::vector<CheckResult> run_properties(const AcceptanceOptions& opt);

}  // namespace quadsum
