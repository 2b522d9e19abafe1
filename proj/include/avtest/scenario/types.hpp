#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace avtest::scenario {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using Rgb = std::array<double, 3>;
using FieldPair = std::pair<std::string, std::string>;

enum class RoadType { StraightRoadSegment };
enum class SensorLocation { FRONT, CENTER, LEFT, RIGHT, TOP };
enum class FogType { LINEAR };
enum class DisturbanceType { INTERLEAVED, FULL_LANE_LENGTH, ONLY_LEFT, ONLY_RIGHT };
enum class SyncType { NO_HEART_BEAT, WITHOUT_SYNC, WITH_SYNC };
enum class ItemType { TIME, VEHICLE, PEDESTRIAN };
enum class RunMode { REAL_TIME, FAST_RUN, FAST_NO_GRAPHICS };

// Serialized by name; the numeric order is fixed and must not be reordered.
enum class StateId { POSITION_X, POSITION_Y, ORIENTATION, SPEED, VELOCITY_X, VELOCITY_Y };

struct Road {
    std::string def_name = "STRROAD";
    RoadType road_type = RoadType::StraightRoadSegment;
    Vec4 rotation{0.0, 1.0, 0.0, std::numbers::pi / 2.0};
    Vec3 position{0.0, 0.02, 0.0};
    int number_of_lanes = 2;
    // Unset means number_of_lanes * 3.5.
    std::optional<double> width;
    double length = 1000.0;

    double effective_width() const { return width ? *width : number_of_lanes * 3.5; }

    bool operator==(const Road&) const = default;
};

struct SensorSpec {
    std::string sensor_type;
    SensorLocation sensor_location = SensorLocation::FRONT;
    std::vector<FieldPair> sensor_fields;

    bool operator==(const SensorSpec&) const = default;
};

struct Vehicle {
    std::string def_name;
    int vhc_id = 0;
    std::string vehicle_model = "AckermannVehicle";
    Vec4 rotation{0.0, 1.0, 0.0, 0.0};
    Vec3 current_position{0.0, 0.3, 0.0};
    double current_orientation = 0.0;
    Rgb color{1.0, 1.0, 1.0};
    std::string controller = "void";
    bool is_controller_name_absolute = false;
    std::vector<std::string> vehicle_parameters;
    std::vector<std::string> controller_parameters;
    std::vector<std::string> controller_arguments;
    std::vector<SensorSpec> sensor_array;

    bool has_sensor(std::string_view type) const {
        for (const auto& s : sensor_array)
            if (s.sensor_type == type) return true;
        return false;
    }

    bool operator==(const Vehicle&) const = default;
};

struct Pedestrian {
    std::string def_name = "PEDESTRIAN";
    int ped_id = 0;
    Vec4 rotation{0.0, 1.0, 0.0, std::numbers::pi / 2.0};
    Vec3 current_position{0.0, 0.0, 0.0};
    Rgb shirt_color{0.25, 0.55, 0.2};
    Rgb pants_color{0.24, 0.25, 0.5};
    Rgb shoes_color{0.28, 0.15, 0.06};
    std::string controller = "void";
    double target_speed = 0.0;  // m/s
    std::vector<double> trajectory;  // x1, y1, x2, y2, ...

    bool operator==(const Pedestrian&) const = default;
};

struct Fog {
    std::string def_name = "FOG";
    FogType fog_type = FogType::LINEAR;
    Rgb color{0.93, 0.96, 1.0};
    double visibility_range = 1000.0;

    bool operator==(const Fog&) const = default;
};

struct RoadDisturbance {
    int disturbance_id = 1;
    DisturbanceType disturbance_type = DisturbanceType::INTERLEAVED;
    Vec4 rotation{0.0, 1.0, 0.0, 0.0};
    Vec3 position{0.0, 0.0, 0.0};
    double length = 100.0;
    double width = 3.5;
    double height = 0.06;
    double surface_height = 0.02;  // stored only; has no effect on the kernel
    double inter_object_spacing = 1.0;

    bool operator==(const RoadDisturbance&) const = default;
};

struct GenericObject {
    std::string def_name;
    std::string object_name = "Tree";
    std::vector<FieldPair> object_parameters;

    bool operator==(const GenericObject&) const = default;
};

struct ControllerParameter {
    std::optional<int> vehicle_id;
    std::string parameter_name;
    std::vector<double> parameter_data;

    bool operator==(const ControllerParameter&) const = default;
};

struct HeartbeatConfig {
    SyncType sync_type = SyncType::NO_HEART_BEAT;
    int period_ms = 10;

    bool operator==(const HeartbeatConfig&) const = default;
};

struct LogItemDescription {
    ItemType item_type = ItemType::TIME;
    int item_index = 0;
    StateId item_state_index = StateId::POSITION_X;

    bool operator==(const LogItemDescription&) const = default;
};

struct InitialStateConfig {
    LogItemDescription item;
    double value = 0.0;

    bool operator==(const InitialStateConfig&) const = default;
};

struct ViewFollowConfig {
    ItemType item_type = ItemType::VEHICLE;
    int item_index = 0;
    Vec3 position{0.0, 0.0, 0.0};
    Vec4 rotation{0.0, 1.0, 0.0, 0.0};

    bool operator==(const ViewFollowConfig&) const = default;
};

struct SimEnvironment {
    std::optional<Fog> fog;
    std::optional<HeartbeatConfig> heart_beat_config;
    std::optional<ViewFollowConfig> view_follow_config;
    std::vector<Vehicle> ego_vehicles_list;
    std::vector<Vehicle> agent_vehicles_list;
    std::vector<Pedestrian> pedestrians_list;
    std::vector<Road> road_list;
    std::vector<RoadDisturbance> road_disturbances_list;
    std::vector<GenericObject> generic_sim_objects_list;
    std::vector<ControllerParameter> control_params_list;
    std::vector<InitialStateConfig> initial_state_config_list;
    std::vector<LogItemDescription> data_log_description_list;
    std::optional<int> data_log_period_ms;

    // Ego vehicles first, then agents. This order defines VEHICLE item indices.
    std::size_t vehicle_count() const { return ego_vehicles_list.size() + agent_vehicles_list.size(); }
    const Vehicle& vehicle_at(std::size_t index) const {
        return index < ego_vehicles_list.size() ? ego_vehicles_list[index]
                                                : agent_vehicles_list[index - ego_vehicles_list.size()];
    }

    bool operator==(const SimEnvironment&) const = default;
};

struct RunConfig {
    RunMode simulation_run_mode = RunMode::FAST_NO_GRAPHICS;

    bool operator==(const RunConfig&) const = default;
};

struct SimulationConfig {
    std::string world_file = "../Webots_Projects/worlds/test_world_1.wbt";
    int server_port = 10021;
    std::string server_ip = "127.0.0.1";
    std::int64_t sim_duration_ms = 50000;
    std::int64_t sim_step_size_ms = 10;
    std::vector<RunConfig> run_config_arr;

    bool operator==(const SimulationConfig&) const = default;
};

// Column layout of a trajectory: one LogItemDescription per column.
// Row r holds the sampled values at time rows[r][time column].
struct Trajectory {
    std::vector<LogItemDescription> columns;
    std::vector<std::vector<double>> rows;

    std::size_t row_count() const { return rows.size(); }
    std::size_t column_count() const { return columns.size(); }

    bool operator==(const Trajectory&) const = default;
};

}  // namespace avtest::scenario
