#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qforest {

// quick trims the four most expensive grids (complete graphs and the
// symmetric census stop at q=3, the 6-vertex star deletions run at q=2 only,
// the seven-point plane skips the odd-characteristic dynamic program) and
// targets about a minute; full runs every check.
enum class VerifyLevel { quick, full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // check count on pass, first mismatch on failure
    int64_t elapsed_ms = 0;
};

struct AcceptanceReport {
    VerifyLevel level = VerifyLevel::full;
    bool pass = false;
    std::vector<CriterionResult> criteria;
};

// Runs the 14-criterion battery. All equalities are exact; randomized checks
// draw from `seed` (default documented in the README), counts use `threads`
// workers (0 = env/hardware).
AcceptanceReport run_acceptance(VerifyLevel level, int threads = 0, uint64_t seed = 20240814);

}  // namespace qforest
