// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.  Exit status is nonzero if any
// criterion fails.
//
//   acceptance [--theta] [--threads N]
//
// --theta additionally runs the slow truncated-theta experiment (excluded
// from the default test suite).

#include <cstdio>
#include <cstring>
#include <string>

#include "quadsum/checks.hpp"

using namespace quadsum;

int main(int argc, char** argv) {
    AcceptanceOptions opt;
    opt.sum.quad.theta_order = 96;
    opt.sum.quad.radial_nodes = 160;
    opt.sum.tail_rel = 1e-9;
    opt.sum.threads = 8;

    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--theta") == 0) opt.include_theta = true;
        if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
            opt.sum.threads = std::atoi(argv[++i]);
    }

    std::printf("acceptance suite (theta order %d, radial nodes %d, tail %.1e, threads %d)\n",
                opt.sum.quad.theta_order, opt.sum.quad.radial_nodes, opt.sum.tail_rel,
                opt.sum.threads);

    auto results = run_acceptance(opt);
    int failures = 0;
    int index = 0;
    for (const auto& r : results) {
        ++index;
        std::printf("[%s] %2d %-32s measured %.3e  tol %.0e  (%.1fs)%s%s\n",
                    r.pass ? "PASS" : "FAIL", index, r.name.c_str(), r.measured, r.tolerance,
                    r.seconds, r.detail.empty() ? "" : "  ", r.detail.c_str());
        if (!r.pass) ++failures;
    }
    if (failures == 0) {
        std::printf("all %zu criteria passed\n", results.size());
        return 0;
    }
    std::printf("%d criteria FAILED\n", failures);
    return 1;
}
