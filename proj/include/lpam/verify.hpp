#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace lpam {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool ran = false;
    bool passed = false;
    std::string measured;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::string suite = "all";  // exact | statistical | all
    double budget_seconds = 1e18;
    uint64_t rng = 7;
    int threads = 0;            // 0 = default
    int dimension_n = 100000;   // growth size for the looptree dimension run
    int diameter_n = 100000;    // growth size for the diameter comparison
};

// Runs the acceptance criteria of the selected suite, printing one
// pass/fail line per criterion to `progress`. Criteria skipped for budget
// are reported with ran = false.
std::vector<CriterionResult> run_verification(const VerifyOptions& options, std::ostream& progress);

std::string verification_report_json(const std::vector<CriterionResult>& results,
                                     const VerifyOptions& options, bool complete);

}  // namespace lpam
