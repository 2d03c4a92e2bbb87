#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bohmcl::validation {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured vs expected vs tolerance
};

// Runs the full self-validation suite: reference widths and peak values,
// oracle equivalence between the closed forms and the moment engine,
// dynamical consistency of the trajectories, and the conservation /
// symmetry structure of the kernel. Each check prints one PASS/FAIL line
// to `progress` when given.
std::vector<CheckResult> run_all(std::ostream* progress = nullptr);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace bohmcl::validation
