#pragma once

#include <stdexcept>
#include <string>

namespace quasicox {

// A mathematical certificate failed: a verified identity of the theory does
// not hold for the computed data.  Distinct from std::invalid_argument (bad
// user input) so callers can map the two onto different exit codes.
struct theorem_violation : std::runtime_error {
    explicit theorem_violation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quasicox
