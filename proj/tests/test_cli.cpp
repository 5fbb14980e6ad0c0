#include <doctest.h>

#include <set>

#include "hqg/config.hpp"

using namespace hqg;
using nlohmann::json;

namespace {

json strip_runtime(json r) {
    r.erase("environment");
    for (auto &c : r["checks"]) c.erase("runtime_ms");
    return r;
}

}  // namespace

TEST_CASE("catalog contract") {
    std::set<std::string> ids;
    std::map<int, int> per_criterion;
    for (const auto &s : suites::catalog()) {
        CHECK(ids.insert(s.id).second);
        if (s.criterion) ++per_criterion[s.criterion];
        for (const auto &su : s.suites) {
            CHECK_FALSE(su.checks.empty());
            for (const auto &c : su.checks) CHECK_FALSE(c.anchor.empty());
        }
    }
    for (const char *id : {"happy-l0", "gauged-lote-z2-l1", "u1-truncation", "entropy-c4", "z2-line"})
        CHECK(ids.count(id) == 1);
    for (int k = 1; k <= 12; ++k) CHECK(per_criterion[k] == 1);
    CHECK(catalog_json() == catalog_json());
    CHECK(suites::gauge_catalog().size() >= 8);
}

TEST_CASE("z2-line gauging-core passes") {
    auto rc = parse_config(json::parse(R"({"schema_version": 1, "scenario": "z2-line", "suites": ["gauging-core"]})"));
    auto rep = suites::run_scenario(rc.scenario, *rc.suites, rc.options);
    CHECK(rep.checks.size() == 4);
    CHECK(rep.passed());
    for (const auto &c : rep.checks) CHECK(c.status == suites::Status::pass);
}

TEST_CASE("report determinism across thread counts") {
    const auto *s = suites::find_scenario("z2-line");
    REQUIRE(s);
    suites::RunOptions one, four;
    four.threads = 4;
    auto a = report_json(suites::run_scenario(*s, {}, one), one);
    auto b = report_json(suites::run_scenario(*s, {}, four), four);
    CHECK(a["schema_version"] == kReportSchemaVersion);
    CHECK(a["environment"]["threads"] == 1);
    CHECK(strip_runtime(a).dump() == strip_runtime(b).dump());
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config(json::parse(R"({"scenario": "z2-line"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"schema_version": 2, "scenario": "z2-line"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"schema_version": 1, "scenario": "nope"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"schema_version": 1, "scenario": "z2-line", "colour": 1})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"schema_version": 1, "code": "happy-lx"})")), ConfigError);
    CHECK_THROWS_AS(
        parse_config(json::parse(R"({"schema_version": 1, "group": "Z2", "graph": {"kind": "hexagon"}})")),
        ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(
                        R"({"schema_version": 1, "group": "Z2", "rep": "irrep:9", "graph": {"kind": "triangle-pendant"}})")),
                    ConfigError);
    auto rc = parse_config(json::parse(R"({"schema_version": 1, "scenario": "z2-line"})"));
    CHECK_THROWS_AS(suites::run_scenario(rc.scenario, {"wilson"}, rc.options), ConfigError);
}

TEST_CASE("dense cap pre-estimate") {
    auto cfg = json::parse(
        R"({"schema_version": 1, "group": "D4xS3", "rep": "regular", "graph": {"kind": "line", "alphas": [0, 1, 1]}})");
    CHECK_THROWS_AS(parse_config(cfg), CapExceeded);
    suites::GaugeInstance small{"z3", "Z3", [] { return line_graph({0, 1, 1}); }, "regular"};
    CHECK(suites::estimated_dimension(small) == 81);
}

TEST_CASE("graph literal") {
    auto g = graph_from_json(json::parse(
        R"({"vertices": [{"id": 0, "alpha": 1}, {"id": 1, "alpha": 1}, {"id": 2, "alpha": 0}], "edges": [[0, 1], [1, 2]]})"));
    CHECK(g.V1() == std::vector<int>{0, 1});
    CHECK(g.V0() == std::vector<int>{2});
    CHECK(g.is_boundary(2));
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"vertices": [{"id": 0}], "edges": [[0, 4]]})")), ConfigError);
}

TEST_CASE("custom scenario from config") {
    auto rc = parse_config(json::parse(R"({"schema_version": 1, "id": "z2-tri", "group": "Z2", "rep": "pauli-x",
        "graph": {"kind": "triangle", "alphas": [1, 1, 0]}, "seed": 11, "tolerance": 1e-9})"));
    CHECK(rc.options.seed == 11);
    CHECK(rc.options.tolerance.value() == doctest::Approx(1e-9));
    auto rep = suites::run_scenario(rc.scenario, {}, rc.options);
    CHECK(rep.checks.size() == 6);
    CHECK(rep.passed());
}
