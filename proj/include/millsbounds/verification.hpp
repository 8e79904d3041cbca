#pragma once

// Invariant suites run by `mills_bounds verify`. Each suite is a numerical
// check of one stated inequality or identity over a fixed sample.

#include <cstddef>
#include <string>
#include <vector>

namespace mills::verification {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::size_t checked = 0;
    std::string detail;  // first violation, or a short summary on success
};

// k_max bounds the continued-fraction depth used by the grid suites.
std::vector<SuiteResult> run_invariant_suites(std::size_t k_max);

}  // namespace mills::verification
