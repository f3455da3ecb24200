#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fbmchaos::verify {

struct Options {
    bool quick = false;              // skip the Monte Carlo criteria
    bool inject_phase_flip = false;  // deliberate defect in the outer-function
                                     // phase; the factorization/reality
                                     // criterion must then fail
    std::uint64_t seed = 12345;
    std::string scratch_dir = "";    // where figure outputs land ("" = none)
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the ten acceptance criteria in order and returns one result each.
std::vector<CriterionResult> run_all(const Options& opt);

bool all_pass(const std::vector<CriterionResult>& results);

// One line per criterion: "[PASS|FAIL|SKIP] <id> <name> (<secs>s): <detail>".
std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace fbmchaos::verify
