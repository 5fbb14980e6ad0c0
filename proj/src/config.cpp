#include "hqg/config.hpp"

#include <fstream>
#include <set>

namespace hqg {

using nlohmann::json;

namespace {

template <class T>
T get_or(const json &j, const char *key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

void reject_unknown(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError("unknown field '" + it.key() + "' in " + where);
}

}  // namespace

LabeledGraph graph_from_json(const json &j) {
    if (!j.is_object()) throw ConfigError("graph must be an object");
    if (j.contains("kind")) {
        reject_unknown(j, {"kind", "alphas", "size"}, "graph");
        return suites::graph_from_spec(get_or<std::string>(j, "kind", ""), get_or<std::vector<int>>(j, "alphas", {}),
                                       get_or<int>(j, "size", 0));
    }
    reject_unknown(j, {"vertices", "edges", "rotation"}, "graph");
    if (!j.contains("vertices") || !j.contains("edges")) throw ConfigError("graph literal needs vertices and edges");
    LabeledGraph g;
    try {
        for (const auto &v : j.at("vertices")) {
            reject_unknown(v, {"id", "alpha", "boundary"}, "vertex");
            int id = v.at("id").get<int>();
            if (g.has_vertex(id)) throw ConfigError("duplicate vertex " + std::to_string(id));
            int alpha = get_or<int>(v, "alpha", 1);
            if (alpha != 0 && alpha != 1) throw ConfigError("alpha must be 0 or 1");
            g.add_vertex(id, alpha, get_or<bool>(v, "boundary", alpha == 0));
        }
        for (const auto &e : j.at("edges")) {
            auto p = e.get<std::vector<int>>();
            if (p.size() != 2 || !g.has_vertex(p[0]) || !g.has_vertex(p[1]) || p[0] == p[1])
                throw ConfigError("bad edge " + e.dump());
            g.add_edge(p[0], p[1]);
        }
        if (j.contains("rotation"))
            for (auto it = j.at("rotation").begin(); it != j.at("rotation").end(); ++it)
                g.set_rotation(std::stoi(it.key()), it.value().get<std::vector<int>>());
    } catch (const json::exception &e) {
        throw ConfigError(std::string("graph literal: ") + e.what());
    } catch (const std::invalid_argument &) {
        throw ConfigError("rotation keys must be vertex ids");
    }
    return g;
}

RunConfig parse_config(const json &j) {
    if (!j.is_object()) throw ConfigError("config must be an object");
    if (!j.contains("schema_version")) throw ConfigError("missing schema_version");
    if (get_or<int>(j, "schema_version", 0) != kConfigSchemaVersion)
        throw ConfigError("unsupported schema_version " + j.at("schema_version").dump());
    reject_unknown(j, {"schema_version", "scenario", "id", "group", "graph", "rep", "code", "suites", "seed", "threads",
                       "tolerance"},
                   "config");
    RunConfig rc;
    if (j.contains("suites")) rc.suites = get_or<std::vector<std::string>>(j, "suites", {});
    rc.options.seed = get_or<unsigned>(j, "seed", rc.options.seed);
    rc.options.threads = get_or<int>(j, "threads", rc.options.threads);
    if (rc.options.threads < 1) throw ConfigError("threads must be >= 1");
    if (j.contains("tolerance")) {
        double t = get_or<double>(j, "tolerance", 0.0);
        if (!(t >= 0.0)) throw ConfigError("tolerance must be nonnegative");
        rc.options.tolerance = t;
    }

    const int kinds = j.contains("scenario") + j.contains("group") + j.contains("code");
    if (kinds != 1) throw ConfigError("config needs exactly one of scenario, group or code");
    if (j.contains("scenario")) {
        auto id = get_or<std::string>(j, "scenario", "");
        const auto *s = suites::find_scenario(id);
        if (!s) throw ConfigError("unknown scenario '" + id + "'");
        rc.scenario = *s;
        return rc;
    }
    const auto id = get_or<std::string>(j, "id", "custom");
    const std::vector<std::string> sel = rc.suites.value_or(std::vector<std::string>{});
    if (j.contains("code")) {
        auto code = get_or<std::string>(j, "code", "");
        suites::code_from_name(code);
        rc.scenario = suites::code_scenario(id, code, rc.suites ? sel : std::vector<std::string>{"holo-structure"});
        return rc;
    }
    if (!j.contains("graph")) throw ConfigError("a group scenario needs a graph");
    auto group = get_or<std::string>(j, "group", "");
    try {
        make_group(group);
    } catch (const UnsupportedSpec &e) {
        throw ConfigError(e.what());
    }
    json graph = j.at("graph");
    suites::GaugeInstance inst{id, group, [graph] { return graph_from_json(graph); }, get_or<std::string>(j, "rep", "regular")};
    inst.graph();
    rc.scenario = suites::gauge_scenario(id, inst, rc.suites ? sel : std::vector<std::string>{"gauging-core", "wilson"});
    return rc;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return parse_config(j);
}

json report_json(const suites::Report &r, const suites::RunOptions &opts) {
    json checks = json::array();
    for (const auto &c : r.checks)
        checks.push_back({{"id", c.id},
                          {"anchor", c.anchor},
                          {"status", suites::status_name(c.status)},
                          {"deviation", c.deviation},
                          {"detail", c.detail},
                          {"runtime_ms", c.runtime_ms}});
    return {{"schema_version", kReportSchemaVersion},
            {"scenario", r.scenario},
            {"passed", r.passed()},
            {"checks", checks},
            {"environment", {{"version", kVersion}, {"seed", opts.seed}, {"threads", opts.threads}}}};
}

json catalog_json() {
    json out = json::array();
    for (const auto &s : suites::catalog()) {
        json su = json::array();
        for (const auto &suite : s.suites) {
            std::set<std::string> anchors;
            for (const auto &c : suite.checks) anchors.insert(c.anchor);
            su.push_back({{"name", suite.name}, {"checks", suite.checks.size()}, {"anchors", anchors}});
        }
        json e = {{"id", s.id}, {"description", s.description}, {"suites", su}};
        if (s.criterion) {
            e["criterion"] = s.criterion;
            e["budget_s"] = s.budget_s;
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace hqg
