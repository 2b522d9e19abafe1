#pragma once

// Scenario documents: UTF-8 JSON with top-level keys "environment" and
// "config". Field names follow the entity tables (e.g. "number_of_lanes",
// "inter_object_spacing"); enums are written by name.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "avtest/scenario/types.hpp"

namespace avtest::scenario {

struct ScenarioDocument {
    SimEnvironment environment;
    SimulationConfig config;

    bool operator==(const ScenarioDocument&) const = default;
};

nlohmann::json to_json(const SimEnvironment& env);
nlohmann::json to_json(const SimulationConfig& config);
nlohmann::json to_json(const Trajectory& trajectory);
nlohmann::json to_json(const LogItemDescription& item);
nlohmann::json to_json(const ScenarioDocument& doc);

SimEnvironment environment_from_json(const nlohmann::json& j, const std::string& path = "environment");
// Rejects configs whose duration is not a multiple of the step size.
SimulationConfig config_from_json(const nlohmann::json& j, const std::string& path = "config");
Trajectory trajectory_from_json(const nlohmann::json& j, const std::string& path = "trajectory");
ScenarioDocument scenario_from_json(const nlohmann::json& j);

std::string serialize_scenario(const SimEnvironment& env, const SimulationConfig& config);
ScenarioDocument parse_scenario(std::string_view text);

ScenarioDocument load_scenario_file(const std::string& path);
void save_scenario_file(const std::string& path, const ScenarioDocument& doc);

// Throws ValidationError on a config that can never be executed.
void check_config(const SimulationConfig& config);

}  // namespace avtest::scenario
