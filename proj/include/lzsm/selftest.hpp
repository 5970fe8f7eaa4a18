#pragma once

#include <string>
#include <vector>

namespace lzsm {

// Built-in verification checks C1..C10. Each pins its own parameters and
// tolerances; `detail` reports the measured numbers. The CLI `validate`
// subcommand runs the fast subset, the acceptance test binary runs all.
struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

std::vector<std::string> all_check_ids();
std::vector<std::string> fast_check_ids();

// Runs the listed checks in order, printing one PASS/FAIL line per check as
// it completes. Returns the results.
std::vector<CheckResult> run_checks(const std::vector<std::string>& ids);

} // namespace lzsm
