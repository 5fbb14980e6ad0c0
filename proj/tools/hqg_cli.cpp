#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "hqg/config.hpp"

using namespace hqg;

namespace {

void print_summary(const suites::Report &r, std::ostream &os) {
    int counts[3] = {0, 0, 0};
    for (const auto &c : r.checks) {
        ++counts[static_cast<int>(c.status)];
        os << std::left << std::setw(5) << suites::status_name(c.status) << ' ' << std::setw(44) << c.id << ' '
           << std::setw(10) << std::setprecision(3) << c.deviation << ' ' << c.detail << '\n';
    }
    os << r.scenario << ": " << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " skip ("
       << std::fixed << std::setprecision(1) << r.runtime_ms / 1000.0 << " s)\n";
    os << std::defaultfloat;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Finite-group lattice gauging and holographic code verification"};
    std::string config, report_path, scenario;
    std::vector<std::string> suite_sel;
    std::optional<int> threads;
    std::optional<unsigned> seed;
    std::optional<double> tolerance;
    bool list = false;
    app.add_option("--config", config, "scenario config (JSON)")->envname("HQG_CONFIG");
    app.add_option("--scenario", scenario, "built-in scenario id")->envname("HQG_SCENARIO");
    app.add_option("--suite", suite_sel, "restrict to these suites")->envname("HQG_SUITE")->delimiter(',');
    app.add_option("--report", report_path, "write the JSON report here")->envname("HQG_REPORT");
    app.add_option("--threads", threads, "worker threads")->envname("HQG_THREADS")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed")->envname("HQG_SEED");
    app.add_option("--tolerance", tolerance, "override every check tolerance")->envname("HQG_TOLERANCE")->check(CLI::NonNegativeNumber);
    app.add_flag("--list", list, "print the scenario catalog");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_pass : exit_config;
    }

    if (list) {
        for (const auto &s : suites::catalog()) {
            std::cout << std::left << std::setw(26) << s.id;
            for (const auto &su : s.suites) std::cout << ' ' << su.name;
            if (s.criterion) std::cout << "  [criterion " << s.criterion << "]";
            std::cout << '\n';
        }
        return exit_pass;
    }

    try {
        RunConfig rc;
        if (!config.empty() && !scenario.empty()) throw ConfigError("use either --config or --scenario");
        if (!config.empty()) {
            rc = load_config(config);
        } else if (!scenario.empty()) {
            const auto *s = suites::find_scenario(scenario);
            if (!s) throw ConfigError("unknown scenario '" + scenario + "'");
            rc.scenario = *s;
        } else {
            throw ConfigError("nothing to run: pass --config, --scenario or --list");
        }
        if (!suite_sel.empty()) rc.suites = suite_sel;
        if (threads) rc.options.threads = *threads;
        if (seed) rc.options.seed = *seed;
        if (tolerance) rc.options.tolerance = *tolerance;

        suites::Report rep;
        rep.scenario = rc.scenario.id;
        if (!rc.suites || !rc.suites->empty()) rep = suites::run_scenario(rc.scenario, rc.suites.value_or(std::vector<std::string>{}), rc.options);

        print_summary(rep, std::cout);
        if (!report_path.empty()) {
            std::ofstream out(report_path);
            if (!out) throw ConfigError("cannot write report " + report_path);
            out << report_json(rep, rc.options).dump(2) << '\n';
        }
        return rep.passed() ? exit_pass : exit_fail;
    } catch (const CapExceeded &e) {
        std::cerr << e.what() << '\n';
        return exit_cap;
    } catch (const ConfigError &e) {
        std::cerr << e.what() << '\n';
        return exit_config;
    } catch (const hqg::Error &e) {
        std::cerr << e.what() << '\n';
        return exit_config;
    }
}
