#include "avtest/scenario/validate.hpp"

#include <cmath>
#include <map>
#include <set>

#include "avtest/controllers/registry.hpp"
#include "avtest/scenario/trace_dict.hpp"

namespace avtest::scenario {
namespace {

std::string at(const std::string& list, std::size_t i) { return list + "[" + std::to_string(i) + "]"; }

class Checker {
public:
    explicit Checker(ValidationReport& out) : out_(out) {}

    void require(bool ok, std::string path, std::string message) {
        if (!ok) out_.push_back({std::move(path), std::move(message)});
    }

    void color(const Rgb& c, const std::string& path) {
        for (double v : c)
            if (!(v >= 0.0 && v <= 1.0)) {
                out_.push_back({path, "color component outside [0, 1]"});
                return;
            }
    }

    void finite(std::span<const double> values, const std::string& path) {
        for (double v : values)
            if (!std::isfinite(v)) {
                out_.push_back({path, "non-finite value"});
                return;
            }
    }

private:
    ValidationReport& out_;
};

bool index_exists(const SimEnvironment& env, ItemType type, int index) {
    if (index < 0) return false;
    switch (type) {
        case ItemType::TIME: return true;
        case ItemType::VEHICLE: return static_cast<std::size_t>(index) < env.vehicle_count();
        case ItemType::PEDESTRIAN: return static_cast<std::size_t>(index) < env.pedestrians_list.size();
    }
    return false;
}

void check_vehicle(Checker& c, const Vehicle& v, const std::string& path) {
    c.require(v.vhc_id >= 0, path + ".vhc_id", "vehicle id must be non-negative");
    c.color(v.color, path + ".color");
    c.finite(v.current_position, path + ".current_position");
    c.finite(std::span<const double>(&v.current_orientation, 1), path + ".current_orientation");
    c.require(controllers::is_vehicle_controller(v.controller), path + ".controller",
              "unregistered controller '" + v.controller + "'");
    for (std::size_t s = 0; s < v.sensor_array.size(); ++s)
        c.require(!v.sensor_array[s].sensor_type.empty(), at(path + ".sensor_array", s) + ".sensor_type",
                  "sensor type must not be empty");
}

}  // namespace

ValidationReport validate_environment(const SimEnvironment& env) {
    ValidationReport report;
    Checker c(report);

    std::map<int, std::string> vehicle_ids;
    auto check_vehicles = [&](const std::vector<Vehicle>& list, const std::string& name) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto path = at(name, i);
            check_vehicle(c, list[i], path);
            auto [it, inserted] = vehicle_ids.emplace(list[i].vhc_id, path);
            c.require(inserted, path + ".vhc_id",
                      "duplicate vehicle id " + std::to_string(list[i].vhc_id) + " (also used by " + it->second + ")");
        }
    };
    check_vehicles(env.ego_vehicles_list, "ego_vehicles_list");
    check_vehicles(env.agent_vehicles_list, "agent_vehicles_list");

    std::set<int> ped_ids;
    for (std::size_t i = 0; i < env.pedestrians_list.size(); ++i) {
        const auto& p = env.pedestrians_list[i];
        const auto path = at("pedestrians_list", i);
        c.require(ped_ids.insert(p.ped_id).second, path + ".ped_id",
                  "duplicate pedestrian id " + std::to_string(p.ped_id));
        c.require(p.trajectory.size() % 2 == 0, path + ".trajectory", "trajectory length must be even");
        c.finite(p.trajectory, path + ".trajectory");
        c.finite(p.current_position, path + ".current_position");
        c.require(p.target_speed >= 0.0, path + ".target_speed", "target speed must be non-negative");
        c.color(p.shirt_color, path + ".shirt_color");
        c.color(p.pants_color, path + ".pants_color");
        c.color(p.shoes_color, path + ".shoes_color");
        c.require(controllers::is_pedestrian_controller(p.controller), path + ".controller",
                  "unregistered pedestrian controller '" + p.controller + "'");
    }

    for (std::size_t i = 0; i < env.road_list.size(); ++i) {
        const auto& r = env.road_list[i];
        const auto path = at("road_list", i);
        c.require(r.number_of_lanes >= 1, path + ".number_of_lanes", "at least one lane required");
        c.require(!r.width || *r.width > 0.0, path + ".width", "width must be positive");
        c.require(r.length > 0.0, path + ".length", "length must be positive");
    }

    if (env.fog) {
        c.require(env.fog->visibility_range > 0.0, "fog.visibility_range", "visibility range must be positive");
        c.color(env.fog->color, "fog.color");
    }

    for (std::size_t i = 0; i < env.road_disturbances_list.size(); ++i) {
        const auto& d = env.road_disturbances_list[i];
        const auto path = at("road_disturbances_list", i);
        c.require(d.length > 0.0, path + ".length", "length must be positive");
        c.require(d.width > 0.0, path + ".width", "width must be positive");
        c.require(d.inter_object_spacing > 0.0, path + ".inter_object_spacing", "spacing must be positive");
        c.require(d.height > 0.0, path + ".height", "height must be positive");
    }

    for (std::size_t i = 0; i < env.control_params_list.size(); ++i) {
        const auto& p = env.control_params_list[i];
        const auto path = at("control_params_list", i);
        c.require(!p.parameter_name.empty(), path + ".parameter_name", "parameter name must not be empty");
        c.finite(p.parameter_data, path + ".parameter_data");
    }

    if (env.heart_beat_config)
        c.require(env.heart_beat_config->period_ms >= 1, "heart_beat_config.period_ms", "period must be >= 1 ms");

    if (env.view_follow_config) {
        const auto& v = *env.view_follow_config;
        c.require(v.item_type != ItemType::TIME && index_exists(env, v.item_type, v.item_index),
                  "view_follow_config.item_index", "dangling index " + std::to_string(v.item_index));
    }

    for (std::size_t i = 0; i < env.initial_state_config_list.size(); ++i) {
        const auto& s = env.initial_state_config_list[i];
        const auto path = at("initial_state_config_list", i);
        c.require(s.item.item_type != ItemType::TIME, path + ".item.item_type", "initial state cannot target TIME");
        c.require(index_exists(env, s.item.item_type, s.item.item_index), path + ".item.item_index",
                  "dangling index " + std::to_string(s.item.item_index));
        c.finite(std::span<const double>(&s.value, 1), path + ".value");
    }

    std::set<StateKey> logged;
    for (std::size_t i = 0; i < env.data_log_description_list.size(); ++i) {
        const auto& d = env.data_log_description_list[i];
        const auto path = at("data_log_description_list", i);
        c.require(index_exists(env, d.item_type, d.item_index), path + ".item_index",
                  "dangling index " + std::to_string(d.item_index));
        c.require(logged.insert(StateKey::of(d)).second, path, "duplicate data log description");
    }

    if (env.data_log_period_ms)
        c.require(*env.data_log_period_ms > 0, "data_log_period_ms", "log period must be positive");

    return report;
}

std::string format_report(const ValidationReport& report) {
    std::string out;
    for (const auto& v : report) out += v.path + ": " + v.message + "\n";
    return out;
}

}  // namespace avtest::scenario
