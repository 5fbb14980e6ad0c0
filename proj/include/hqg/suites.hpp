#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hqg/gauging.hpp"
#include "hqg/holographic.hpp"

namespace hqg::suites {

enum class Status { pass, fail, skip };
std::string status_name(Status s);

struct CheckResult {
    std::string id;
    std::string anchor;
    Status status = Status::pass;
    double deviation = 0.0;
    double runtime_ms = 0.0;
    std::string detail;
};

struct RunOptions {
    unsigned seed = 7;
    int threads = 1;
    std::optional<double> tolerance;  // overrides every check's default
};

struct CheckDef {
    std::string id;
    std::string anchor;
    double tolerance = 1e-10;
    std::function<CheckResult(double tol, const RunOptions &)> run;
};

struct Suite {
    std::string name;
    std::vector<CheckDef> checks;
};

struct Scenario {
    std::string id;
    std::string description;
    int criterion = 0;  // acceptance criterion covered, 0 for none
    double budget_s = 0.0;
    std::vector<Suite> suites;
};

struct Report {
    std::string scenario;
    std::vector<CheckResult> checks;
    double runtime_ms = 0.0;
    bool passed() const;  // no failing check
};

struct GaugeInstance {
    std::string name;
    std::string group;  // make_group spec
    std::function<LabeledGraph()> graph;
    std::string rep;  // "pauli-x", "regular", "irrep:<k>", "sum:<a>,<b>"
};

// Pre-estimate of the edge-extended dimension; throws CapExceeded beyond dense_cap().
long long estimated_dimension(const GaugeInstance &inst);
GaugeStructure build_instance(const GaugeInstance &inst);
std::vector<GaugeInstance> gauge_catalog();
LabeledGraph graph_from_spec(const std::string &kind, const std::vector<int> &alphas, int size);

Suite gauging_core_suite(const std::vector<GaugeInstance> &instances);
Suite wilson_suite(const std::vector<GaugeInstance> &instances);
Suite holo_structure_suite(const std::vector<std::string> &codes, int max_region = 8, int permutations = 20);

Scenario gauge_scenario(const std::string &id, const GaugeInstance &inst, const std::vector<std::string> &suites);
Scenario code_scenario(const std::string &id, const std::string &code, const std::vector<std::string> &suites);

// Built-in scenarios; deterministic order.
const std::vector<Scenario> &catalog();
const Scenario *find_scenario(const std::string &id);
std::vector<std::string> suite_names();

// Runs the selected suites (all when empty); unknown names throw ConfigError.
Report run_scenario(const Scenario &s, const std::vector<std::string> &selected, const RunOptions &opts);

// "happy-l<k>", "lote-z2-l<k>", "gauged-lote-z2-l<k>".
HolographicCode code_from_name(const std::string &name);

}  // namespace hqg::suites
