// Runs the full acceptance battery and prints one PASS/FAIL line per
// criterion.  Exit status is 0 only if every criterion holds.
#include <algorithm>
#include <cstdio>

#include "rrc/selftest.hpp"

int main() {
    const auto results = rrc::run_acceptance_battery(RRC_CLI_PATH, 0);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] %2d %s (%.2f s): %s\n", r.passed ? "PASS" : "FAIL",
                    r.index, r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        all = all && r.passed;
    }
    std::printf("%zu/%zu criteria passed\n",
                static_cast<size_t>(
                    std::count_if(results.begin(), results.end(),
                                  [](const auto& r) { return r.passed; })),
                results.size());
    return all ? 0 : 1;
}
