// Acceptance gate: runs the full verification battery and prints one
// pass/fail line per named check. Exit 0 only when every check passes.
#include <cstdio>

#include "cyclo/accept.hpp"

int main() {
    cyclo::RunConfig cfg;
    cyclo::Report rep = cyclo::run_acceptance(cfg);

    int passed = 0;
    for (const auto& c : rep.checks) {
        if (c.pass) {
            std::printf("PASS  %s\n", c.name.c_str());
            ++passed;
        } else {
            std::printf("FAIL  %s\n      expected: %s\n      got:      %s\n",
                        c.name.c_str(), c.expected.c_str(), c.got.c_str());
        }
    }
    std::printf("%d/%zu checks passed in %.1fs\n", passed, rep.checks.size(),
                rep.elapsed_seconds);

    if (rep.checks.size() != 13) {
        std::printf("FAIL  battery is incomplete: %zu checks, expected 13\n",
                    rep.checks.size());
        return 1;
    }
    return rep.all_pass() ? 0 : 1;
}
