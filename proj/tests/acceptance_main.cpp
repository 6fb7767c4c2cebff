// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion.  Exit code 0 iff
// all criteria pass.

#include <cstdio>

#include "hypoisson/selftest.hpp"

int main() {
    using namespace hypoisson;
    AcceptanceOptions opt;
    int failures = 0;
    run_acceptance(opt, [&](const CriterionResult& r) {
        std::printf("[%s] %2d. %-42s metric=%.3e tol=%.1e  %s\n",
                    r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.metric, r.tolerance,
                    r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    });
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
