#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hqg/suites.hpp"

namespace hqg {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char *kVersion = "0.1.0";

struct RunConfig {
    suites::Scenario scenario;
    std::optional<std::vector<std::string>> suites;  // nullopt: all suites of the scenario
    suites::RunOptions options;
};

// Throws ConfigError on malformed input and CapExceeded when the dense pre-estimate is over the cap.
RunConfig parse_config(const nlohmann::json &j);
RunConfig load_config(const std::string &path);
LabeledGraph graph_from_json(const nlohmann::json &j);

nlohmann::json report_json(const suites::Report &r, const suites::RunOptions &opts);
nlohmann::json catalog_json();

enum ExitCode { exit_pass = 0, exit_fail = 2, exit_config = 3, exit_cap = 4 };

}  // namespace hqg
