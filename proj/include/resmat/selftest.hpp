#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace resmat {

struct CheckResult {
    std::string name;
    bool pass;
    double deviation;   // worst value observed, whatever the check measures
    std::string detail; // failure description; empty on pass
};

// The full cross-check battery over the built-in corpora. Deterministic:
// fixed seeds, fixed order, so output is byte-stable across runs.
std::vector<CheckResult> run_selftest();

// One line per check plus a summary line; true when everything passed.
bool print_selftest(std::ostream& os, const std::vector<CheckResult>& results);

} // namespace resmat
