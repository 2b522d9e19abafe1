#include "avtest/scenario/document.hpp"

#include "avtest/error.hpp"
#include "avtest/json_util.hpp"
#include "avtest/scenario/enums.hpp"

namespace avtest::scenario {

using json_io::JsonObject;
using json_io::read_value;
using nlohmann::json;

namespace {

template <typename Enum>
json enum_json(Enum v) {
    return std::string(to_string(v));
}

template <typename T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json pairs_json(const std::vector<FieldPair>& pairs) {
    json arr = json::array();
    for (const auto& [k, v] : pairs) arr.push_back(json::array({k, v}));
    return arr;
}

template <typename T>
json list_json(const std::vector<T>& items) {
    json arr = json::array();
    for (const auto& item : items) arr.push_back(to_json(item));
    return arr;
}

}  // namespace

// Enum readers live in this namespace so the templated vector/optional
// readers find them by argument-dependent lookup.
template <typename Enum>
    requires std::is_enum_v<Enum>
void read_value(const json& j, const std::string& path, Enum& out) {
    if (!j.is_string()) json_io::fail(path, "expected an enum name string");
    auto v = enum_from_string<Enum>(j.get<std::string>());
    if (!v) json_io::fail(path, "unknown enum value '" + j.get<std::string>() + "'");
    out = *v;
}

json to_json(const Road& r) {
    return {{"def_name", r.def_name},
            {"road_type", enum_json(r.road_type)},
            {"rotation", r.rotation},
            {"position", r.position},
            {"number_of_lanes", r.number_of_lanes},
            {"width", opt_json(r.width)},
            {"length", r.length}};
}

void read_value(const json& j, const std::string& path, Road& r) {
    JsonObject o(j, path);
    o.optional_field("def_name", r.def_name);
    o.optional_field("road_type", r.road_type);
    o.optional_field("rotation", r.rotation);
    o.optional_field("position", r.position);
    o.optional_field("number_of_lanes", r.number_of_lanes);
    o.optional_field("width", r.width);
    o.optional_field("length", r.length);
    o.reject_unknown();
}

json to_json(const SensorSpec& s) {
    return {{"sensor_type", s.sensor_type},
            {"sensor_location", enum_json(s.sensor_location)},
            {"sensor_fields", pairs_json(s.sensor_fields)}};
}

void read_value(const json& j, const std::string& path, SensorSpec& s) {
    JsonObject o(j, path);
    o.optional_field("sensor_type", s.sensor_type);
    o.optional_field("sensor_location", s.sensor_location);
    o.optional_field("sensor_fields", s.sensor_fields);
    o.reject_unknown();
}

json to_json(const Vehicle& v) {
    return {{"def_name", v.def_name},
            {"vhc_id", v.vhc_id},
            {"vehicle_model", v.vehicle_model},
            {"rotation", v.rotation},
            {"current_position", v.current_position},
            {"current_orientation", v.current_orientation},
            {"color", v.color},
            {"controller", v.controller},
            {"is_controller_name_absolute", v.is_controller_name_absolute},
            {"vehicle_parameters", v.vehicle_parameters},
            {"controller_parameters", v.controller_parameters},
            {"controller_arguments", v.controller_arguments},
            {"sensor_array", list_json(v.sensor_array)}};
}

void read_value(const json& j, const std::string& path, Vehicle& v) {
    JsonObject o(j, path);
    o.optional_field("def_name", v.def_name);
    o.optional_field("vhc_id", v.vhc_id);
    o.optional_field("vehicle_model", v.vehicle_model);
    o.optional_field("rotation", v.rotation);
    o.optional_field("current_position", v.current_position);
    o.optional_field("current_orientation", v.current_orientation);
    o.optional_field("color", v.color);
    o.optional_field("controller", v.controller);
    o.optional_field("is_controller_name_absolute", v.is_controller_name_absolute);
    o.optional_field("vehicle_parameters", v.vehicle_parameters);
    o.optional_field("controller_parameters", v.controller_parameters);
    o.optional_field("controller_arguments", v.controller_arguments);
    o.optional_field("sensor_array", v.sensor_array);
    o.reject_unknown();
}

json to_json(const Pedestrian& p) {
    return {{"def_name", p.def_name},
            {"ped_id", p.ped_id},
            {"rotation", p.rotation},
            {"current_position", p.current_position},
            {"shirt_color", p.shirt_color},
            {"pants_color", p.pants_color},
            {"shoes_color", p.shoes_color},
            {"controller", p.controller},
            {"target_speed", p.target_speed},
            {"trajectory", p.trajectory}};
}

void read_value(const json& j, const std::string& path, Pedestrian& p) {
    JsonObject o(j, path);
    o.optional_field("def_name", p.def_name);
    o.optional_field("ped_id", p.ped_id);
    o.optional_field("rotation", p.rotation);
    o.optional_field("current_position", p.current_position);
    o.optional_field("shirt_color", p.shirt_color);
    o.optional_field("pants_color", p.pants_color);
    o.optional_field("shoes_color", p.shoes_color);
    o.optional_field("controller", p.controller);
    o.optional_field("target_speed", p.target_speed);
    o.optional_field("trajectory", p.trajectory);
    o.reject_unknown();
}

json to_json(const Fog& f) {
    return {{"def_name", f.def_name},
            {"fog_type", enum_json(f.fog_type)},
            {"color", f.color},
            {"visibility_range", f.visibility_range}};
}

void read_value(const json& j, const std::string& path, Fog& f) {
    JsonObject o(j, path);
    o.optional_field("def_name", f.def_name);
    o.optional_field("fog_type", f.fog_type);
    o.optional_field("color", f.color);
    o.optional_field("visibility_range", f.visibility_range);
    o.reject_unknown();
}

json to_json(const RoadDisturbance& d) {
    return {{"disturbance_id", d.disturbance_id},
            {"disturbance_type", enum_json(d.disturbance_type)},
            {"rotation", d.rotation},
            {"position", d.position},
            {"length", d.length},
            {"width", d.width},
            {"height", d.height},
            {"surface_height", d.surface_height},
            {"inter_object_spacing", d.inter_object_spacing}};
}

void read_value(const json& j, const std::string& path, RoadDisturbance& d) {
    JsonObject o(j, path);
    o.optional_field("disturbance_id", d.disturbance_id);
    o.optional_field("disturbance_type", d.disturbance_type);
    o.optional_field("rotation", d.rotation);
    o.optional_field("position", d.position);
    o.optional_field("length", d.length);
    o.optional_field("width", d.width);
    o.optional_field("height", d.height);
    o.optional_field("surface_height", d.surface_height);
    o.optional_field("inter_object_spacing", d.inter_object_spacing);
    o.reject_unknown();
}

json to_json(const GenericObject& g) {
    return {{"def_name", g.def_name},
            {"object_name", g.object_name},
            {"object_parameters", pairs_json(g.object_parameters)}};
}

void read_value(const json& j, const std::string& path, GenericObject& g) {
    JsonObject o(j, path);
    o.optional_field("def_name", g.def_name);
    o.optional_field("object_name", g.object_name);
    o.optional_field("object_parameters", g.object_parameters);
    o.reject_unknown();
}

json to_json(const ControllerParameter& c) {
    return {{"vehicle_id", opt_json(c.vehicle_id)},
            {"parameter_name", c.parameter_name},
            {"parameter_data", c.parameter_data}};
}

void read_value(const json& j, const std::string& path, ControllerParameter& c) {
    JsonObject o(j, path);
    o.optional_field("vehicle_id", c.vehicle_id);
    o.optional_field("parameter_name", c.parameter_name);
    o.optional_field("parameter_data", c.parameter_data);
    o.reject_unknown();
}

json to_json(const HeartbeatConfig& h) {
    return {{"sync_type", enum_json(h.sync_type)}, {"period_ms", h.period_ms}};
}

void read_value(const json& j, const std::string& path, HeartbeatConfig& h) {
    JsonObject o(j, path);
    o.optional_field("sync_type", h.sync_type);
    o.optional_field("period_ms", h.period_ms);
    o.reject_unknown();
}

json to_json(const LogItemDescription& d) {
    return {{"item_type", enum_json(d.item_type)},
            {"item_index", d.item_index},
            {"item_state_index", enum_json(d.item_state_index)}};
}

void read_value(const json& j, const std::string& path, LogItemDescription& d) {
    JsonObject o(j, path);
    o.required_field("item_type", d.item_type);
    o.optional_field("item_index", d.item_index);
    o.optional_field("item_state_index", d.item_state_index);
    o.reject_unknown();
}

json to_json(const InitialStateConfig& c) { return {{"item", to_json(c.item)}, {"value", c.value}}; }

void read_value(const json& j, const std::string& path, InitialStateConfig& c) {
    JsonObject o(j, path);
    o.required_field("item", c.item);
    o.required_field("value", c.value);
    o.reject_unknown();
}

json to_json(const ViewFollowConfig& v) {
    return {{"item_type", enum_json(v.item_type)},
            {"item_index", v.item_index},
            {"position", v.position},
            {"rotation", v.rotation}};
}

void read_value(const json& j, const std::string& path, ViewFollowConfig& v) {
    JsonObject o(j, path);
    o.optional_field("item_type", v.item_type);
    o.optional_field("item_index", v.item_index);
    o.optional_field("position", v.position);
    o.optional_field("rotation", v.rotation);
    o.reject_unknown();
}

json to_json(const RunConfig& r) { return {{"simulation_run_mode", enum_json(r.simulation_run_mode)}}; }

void read_value(const json& j, const std::string& path, RunConfig& r) {
    JsonObject o(j, path);
    o.optional_field("simulation_run_mode", r.simulation_run_mode);
    o.reject_unknown();
}

json to_json(const SimEnvironment& env) {
    json fog = env.fog ? to_json(*env.fog) : json(nullptr);
    json hb = env.heart_beat_config ? to_json(*env.heart_beat_config) : json(nullptr);
    json vf = env.view_follow_config ? to_json(*env.view_follow_config) : json(nullptr);
    return {{"fog", fog},
            {"heart_beat_config", hb},
            {"view_follow_config", vf},
            {"ego_vehicles_list", list_json(env.ego_vehicles_list)},
            {"agent_vehicles_list", list_json(env.agent_vehicles_list)},
            {"pedestrians_list", list_json(env.pedestrians_list)},
            {"road_list", list_json(env.road_list)},
            {"road_disturbances_list", list_json(env.road_disturbances_list)},
            {"generic_sim_objects_list", list_json(env.generic_sim_objects_list)},
            {"control_params_list", list_json(env.control_params_list)},
            {"initial_state_config_list", list_json(env.initial_state_config_list)},
            {"data_log_description_list", list_json(env.data_log_description_list)},
            {"data_log_period_ms", opt_json(env.data_log_period_ms)}};
}

SimEnvironment environment_from_json(const json& j, const std::string& path) {
    SimEnvironment env;
    JsonObject o(j, path);
    o.optional_field("fog", env.fog);
    o.optional_field("heart_beat_config", env.heart_beat_config);
    o.optional_field("view_follow_config", env.view_follow_config);
    o.optional_field("ego_vehicles_list", env.ego_vehicles_list);
    o.optional_field("agent_vehicles_list", env.agent_vehicles_list);
    o.optional_field("pedestrians_list", env.pedestrians_list);
    o.optional_field("road_list", env.road_list);
    o.optional_field("road_disturbances_list", env.road_disturbances_list);
    o.optional_field("generic_sim_objects_list", env.generic_sim_objects_list);
    o.optional_field("control_params_list", env.control_params_list);
    o.optional_field("initial_state_config_list", env.initial_state_config_list);
    o.optional_field("data_log_description_list", env.data_log_description_list);
    o.optional_field("data_log_period_ms", env.data_log_period_ms);
    o.reject_unknown();
    return env;
}

json to_json(const SimulationConfig& c) {
    return {{"world_file", c.world_file},
            {"server_port", c.server_port},
            {"server_ip", c.server_ip},
            {"sim_duration_ms", c.sim_duration_ms},
            {"sim_step_size", c.sim_step_size_ms},
            {"run_config_arr", list_json(c.run_config_arr)}};
}

void check_config(const SimulationConfig& c) {
    if (c.sim_step_size_ms <= 0) throw ValidationError("config.sim_step_size: must be positive");
    if (c.sim_duration_ms < 0) throw ValidationError("config.sim_duration_ms: must not be negative");
    if (c.sim_duration_ms % c.sim_step_size_ms != 0)
        throw ValidationError("config.sim_duration_ms: duration not multiple of step (" +
                              std::to_string(c.sim_duration_ms) + " vs " + std::to_string(c.sim_step_size_ms) + ")");
    if (c.server_port < 0 || c.server_port > 65535) throw ValidationError("config.server_port: out of range");
}

SimulationConfig config_from_json(const json& j, const std::string& path) {
    SimulationConfig c;
    JsonObject o(j, path);
    o.optional_field("world_file", c.world_file);
    o.optional_field("server_port", c.server_port);
    o.optional_field("server_ip", c.server_ip);
    o.optional_field("sim_duration_ms", c.sim_duration_ms);
    o.optional_field("sim_step_size", c.sim_step_size_ms);
    o.optional_field("run_config_arr", c.run_config_arr);
    o.reject_unknown();
    try {
        check_config(c);
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
    return c;
}

json to_json(const Trajectory& t) {
    json rows = json::array();
    for (const auto& row : t.rows) rows.push_back(row);
    return {{"columns", list_json(t.columns)}, {"rows", rows}};
}

Trajectory trajectory_from_json(const json& j, const std::string& path) {
    Trajectory t;
    JsonObject o(j, path);
    o.required_field("columns", t.columns);
    o.required_field("rows", t.rows);
    o.reject_unknown();
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (t.rows[r].size() != t.columns.size())
            json_io::fail(json_io::index_path(path + ".rows", r), "row width does not match column count");
    return t;
}

json to_json(const ScenarioDocument& doc) {
    return {{"environment", to_json(doc.environment)}, {"config", to_json(doc.config)}};
}

ScenarioDocument scenario_from_json(const json& j) {
    ScenarioDocument doc;
    JsonObject o(j, "");
    if (const json* env = o.find("environment")) doc.environment = environment_from_json(*env, "environment");
    if (const json* cfg = o.find("config")) doc.config = config_from_json(*cfg, "config");
    o.reject_unknown();
    return doc;
}

std::string serialize_scenario(const SimEnvironment& env, const SimulationConfig& config) {
    return to_json(ScenarioDocument{env, config}).dump(2) + "\n";
}

ScenarioDocument parse_scenario(std::string_view text) {
    return scenario_from_json(json_io::parse_text(text, "scenario document"));
}

ScenarioDocument load_scenario_file(const std::string& path) {
    try {
        return parse_scenario(json_io::read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_scenario_file(const std::string& path, const ScenarioDocument& doc) {
    json_io::write_file(path, serialize_scenario(doc.environment, doc.config));
}

}  // namespace avtest::scenario
