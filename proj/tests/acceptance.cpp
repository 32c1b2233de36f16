// Acceptance runner: one line per check, nonzero exit when anything fails.

#include <cstdio>

#include "heiq/selftest.hpp"

int main() {
    int failures = 0;
    auto results = heiq::run_acceptance({}, [&](const heiq::CheckResult& r) {
        const char* status = r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL";
        std::printf("[%s] %-24s (%.2fs) %s\n", status, r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
    });
    for (const auto& r : results)
        if (!r.pass && !r.skipped) ++failures;
    if (failures) std::printf("%d acceptance check(s) failed\n", failures);
    return failures;
}
