#pragma once

#include <stdexcept>
#include <string>

namespace contsense {

// Raised when a routine cannot meet its stated accuracy contract:
// integrator step underflow, non-converged finite difference, degenerate
// steady space, non-decayed correlator tails, and the like.
// Precondition violations (bad shapes, invalid parameters) use
// std::invalid_argument instead.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace contsense
