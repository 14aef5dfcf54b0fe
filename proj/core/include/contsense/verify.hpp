#pragma once

#include <functional>
#include <string>
#include <vector>

#include "contsense/optimize.hpp"
#include "contsense/structures.hpp"

namespace contsense {

// One checked claim of the acceptance suite, with the measured numbers that
// decided it.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
    double seconds = 0.0;
};

struct VerifyOptions {
    int threads = 1;
    // Called as each criterion finishes.  The ceiling check consumes values
    // produced by earlier criteria, so completion order is not id order.
    std::function<void(const CriterionResult&)> on_result;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;  // sorted by id
    bool all_passed = false;
};

VerifyReport run_acceptance(const VerifyOptions& opt = {});

}  // namespace contsense
