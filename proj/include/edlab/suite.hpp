#ifndef EDLAB_SUITE_HPP
#define EDLAB_SUITE_HPP

#include <string>
#include <vector>

namespace edlab {

struct CriterionResult {
    std::string id;
    std::string title;
    bool pass = false;
    double margin = 0.0;  // smallest margin observed inside the criterion
    double seconds = 0.0;
    std::string details;
};

struct SuiteOptions {
    /// Reduced resolutions and doubled tolerances; multipliers are listed in
    /// the README.
    bool quick = false;
    /// Run only criteria whose id contains this substring (empty = all).
    std::string only;
};

/// Every acceptance criterion, one result each, in a fixed order. The final
/// "runtime" entry reports the wall-clock total against the 10-minute budget.
std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& options = {});

}  // namespace edlab

#endif
