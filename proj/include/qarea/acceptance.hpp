#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qarea {

struct AcceptanceOptions {
    bool quick = false;             // reduced smoke battery (< 10 minutes)
    std::uint64_t seed = 20260815;  // base seed; each check uses its own streams
    unsigned threads = 0;           // 0 = all available
    std::optional<int> only;        // run a single numbered check
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the acceptance battery in order, streaming one pass/fail line per
// criterion to `log` as each finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qarea
