// One PASS/FAIL line per acceptance criterion, each backed by its catalog scenario.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "hqg/suites.hpp"

using namespace hqg::suites;

int main(int argc, char **argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool verbose = argc > 2 && std::strcmp(argv[2], "-v") == 0;
    int failed = 0;
    for (int crit = 1; crit <= 12; ++crit) {
        if (only && crit != only) continue;
        const Scenario *sc = nullptr;
        int hits = 0;
        for (const auto &s : catalog())
            if (s.criterion == crit) {
                sc = &s;
                ++hits;
            }
        if (hits != 1) {
            std::printf("FAIL criterion %2d: %d catalog scenarios\n", crit, hits);
            ++failed;
            continue;
        }
        RunOptions opts;
        auto t0 = std::chrono::steady_clock::now();
        Report rep;
        std::string err;
        try {
            rep = run_scenario(*sc, {}, opts);
        } catch (const std::exception &e) {
            err = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        int pass = 0, skip = 0;
        std::string first;
        for (const auto &c : rep.checks) {
            if (c.status == Status::pass) ++pass;
            else if (c.status == Status::skip) ++skip;
            else if (first.empty()) first = c.id + ": " + c.detail;
        }
        bool ok = err.empty() && rep.passed() && !rep.checks.empty() && secs < sc->budget_s;
        if (!ok && first.empty()) first = err.empty() ? (secs >= sc->budget_s ? "over budget" : "no checks") : err;
        std::printf("%s criterion %2d (%s): %d/%zu pass, %d skip, %.1f s of %.0f s", ok ? "PASS" : "FAIL", crit,
                    sc->id.c_str(), pass, rep.checks.size(), skip, secs, sc->budget_s);
        if (!ok) std::printf(" | %s", first.c_str());
        std::printf("\n");
        if (verbose)
            for (const auto &c : rep.checks)
                std::printf("    %-4s %-48s %.3g %s\n", status_name(c.status).c_str(), c.id.c_str(), c.deviation,
                            c.detail.c_str());
        std::fflush(stdout);
        failed += !ok;
    }
    return failed ? 1 : 0;
}
