// Runs the ten-point verification matrix and prints one line per criterion.
// Exit status is the number of failed criteria (0 = all green).

#include <iostream>

#include <quasicox/acceptance.hpp>

int main() {
    const auto results = quasicox::acceptance::run_acceptance(std::cout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.passed) ++failures;
    if (failures == 0)
        std::cout << "all " << results.size() << " criteria passed\n";
    else
        std::cout << failures << " of " << results.size() << " criteria FAILED\n";
    return failures;
}
