#include "avtest/sim/world.hpp"

#include <cmath>
#include <numbers>

#include "avtest/controllers/registry.hpp"
#include "avtest/error.hpp"

namespace avtest::sim {

using controllers::normalize_angle;
using scenario::ItemType;
using scenario::StateId;

double heading_from_orientation(double orientation) {
    return normalize_angle(std::numbers::pi / 2.0 - orientation);
}

WorldState build_world(const scenario::SimEnvironment& env, const scenario::SimulationConfig&,
                       const KernelOptions& options) {
    WorldState world;
    world.options = options;
    if (env.fog) world.fog_visibility = env.fog->visibility_range;

    world.vehicles.reserve(env.vehicle_count());
    for (std::size_t i = 0; i < env.vehicle_count(); ++i) {
        const auto& v = env.vehicle_at(i);
        VehicleState s;
        s.id = v.vhc_id;
        s.x = v.current_position[0];
        s.y = v.current_position[2];
        s.heading = heading_from_orientation(v.current_orientation);
        s.has_radar = v.has_sensor("Radar");
        s.controller = controllers::make_vehicle_controller(v, controllers::params_for(v, env.control_params_list));
        world.vehicles.push_back(std::move(s));
    }

    for (const auto& p : env.pedestrians_list) {
        if (!controllers::is_pedestrian_controller(p.controller))
            throw SetupError("unregistered pedestrian controller '" + p.controller + "'");
        PedestrianState s;
        s.id = p.ped_id;
        s.walking = p.controller == "pedestrian_control";
        s.target_speed = p.target_speed;
        s.waypoints = controllers::waypoints_from_flat(p.trajectory);
        s.motion.position = {p.current_position[0], p.current_position[2]};
        if (!s.waypoints.empty())
            s.motion.heading = std::atan2(s.waypoints.front().y - s.motion.position.y,
                                          s.waypoints.front().x - s.motion.position.x);
        world.pedestrians.push_back(std::move(s));
    }

    world.static_geometry.roads = env.road_list;
    world.static_geometry.disturbances = env.road_disturbances_list;
    world.static_geometry.objects = env.generic_sim_objects_list;
    return world;
}

void apply_initial_states(WorldState& world, const std::vector<scenario::InitialStateConfig>& configs) {
    for (const auto& c : configs) {
        const auto idx = static_cast<std::size_t>(c.item.item_index);
        if (c.item.item_type == ItemType::VEHICLE) {
            if (idx >= world.vehicles.size()) throw ValidationError("initial state references missing vehicle");
            auto& v = world.vehicles[idx];
            switch (c.item.item_state_index) {
                case StateId::POSITION_X: v.x = c.value; break;
                case StateId::POSITION_Y: v.y = c.value; break;
                case StateId::ORIENTATION: v.heading = normalize_angle(c.value); break;
                case StateId::SPEED:
                case StateId::VELOCITY_X:
                case StateId::VELOCITY_Y: v.speed = std::abs(c.value); break;
            }
        } else if (c.item.item_type == ItemType::PEDESTRIAN) {
            if (idx >= world.pedestrians.size()) throw ValidationError("initial state references missing pedestrian");
            auto& p = world.pedestrians[idx];
            switch (c.item.item_state_index) {
                case StateId::POSITION_X: p.motion.position.x = c.value; break;
                case StateId::POSITION_Y: p.motion.position.y = c.value; break;
                case StateId::ORIENTATION: p.motion.heading = normalize_angle(c.value); break;
                case StateId::SPEED:
                case StateId::VELOCITY_X:
                case StateId::VELOCITY_Y: p.target_speed = std::abs(c.value); break;
            }
        } else {
            throw ValidationError("initial state cannot target TIME");
        }
    }
}

void integrate_vehicle(VehicleState& v, controllers::ControlOutput u, double dt_s) {
    u = controllers::saturate(u);
    const double speed = v.speed;
    const double heading = v.heading;
    v.x += speed * std::cos(heading) * dt_s;
    v.y += speed * std::sin(heading) * dt_s;
    if (u.steering != 0.0) v.heading = normalize_angle(heading + speed / controllers::kWheelbase * std::tan(u.steering) * dt_s);
    v.speed = std::max(0.0, speed + u.acceleration * dt_s);
}

std::vector<controllers::RadarDetection> radar_sense(const WorldState& world, std::size_t self_index) {
    std::vector<controllers::RadarTarget> targets;
    targets.reserve(world.vehicles.size() + world.pedestrians.size());
    for (std::size_t i = 0; i < world.vehicles.size(); ++i) {
        if (i == self_index) continue;
        const auto& v = world.vehicles[i];
        targets.push_back({v.x, v.y, v.speed * std::cos(v.heading), v.speed * std::sin(v.heading)});
    }
    for (const auto& p : world.pedestrians) {
        const double speed = p.walking && p.motion.waypoint < p.waypoints.size() ? p.target_speed : 0.0;
        targets.push_back({p.motion.position.x, p.motion.position.y, speed * std::cos(p.motion.heading),
                           speed * std::sin(p.motion.heading)});
    }
    double range = controllers::kRadarRange;
    if (world.options.fog_limits_radar && world.fog_visibility) range = std::min(range, *world.fog_visibility);
    return controllers::radar_sense(world.vehicles.at(self_index).kinematics(), targets, range);
}

void step(WorldState& world, std::int64_t dt_ms) {
    const double dt_s = static_cast<double>(dt_ms) / 1000.0;

    std::vector<controllers::ControlOutput> commands(world.vehicles.size());
    for (std::size_t i = 0; i < world.vehicles.size(); ++i) {
        const auto& v = world.vehicles[i];
        std::vector<controllers::RadarDetection> radar;
        if (v.has_radar && v.controller->uses_radar()) radar = radar_sense(world, i);
        commands[i] = v.controller->compute({v.kinematics(), radar, dt_s});
    }
    for (std::size_t i = 0; i < world.vehicles.size(); ++i) integrate_vehicle(world.vehicles[i], commands[i], dt_s);

    for (auto& p : world.pedestrians)
        if (p.walking) p.motion = controllers::pedestrian_control(p.motion, p.target_speed, p.waypoints, dt_s);

    world.sim_time_ms += static_cast<std::uint64_t>(dt_ms);
}

double disturbance_offset(const StaticGeometry& geometry, double x, double y) {
    double offset = 0.0;
    for (const auto& d : geometry.disturbances) {
        // A negative rotation angle lays the region out toward -x from its
        // anchor, as for roads.
        const double x0 = d.rotation[3] < 0.0 ? d.position[0] - d.length : d.position[0];
        const double y0 = d.position[2] - d.width / 2.0;
        if (x < x0 || x > x0 + d.length || y < y0 || y > y0 + d.width) continue;
        offset += d.height * std::sin(2.0 * std::numbers::pi * x / d.inter_object_spacing);
    }
    return offset;
}

namespace {

double vehicle_state(const WorldState& world, const VehicleState& v, StateId id) {
    switch (id) {
        case StateId::POSITION_X: return v.x;
        case StateId::POSITION_Y: return v.y + disturbance_offset(world.static_geometry, v.x, v.y);
        case StateId::ORIENTATION: return normalize_angle(v.heading);
        case StateId::SPEED: return v.speed;
        case StateId::VELOCITY_X: return v.speed * std::cos(v.heading);
        case StateId::VELOCITY_Y: return v.speed * std::sin(v.heading);
    }
    return 0.0;
}

double pedestrian_state(const PedestrianState& p, StateId id) {
    const double speed = p.motion.moving ? p.target_speed : 0.0;
    switch (id) {
        case StateId::POSITION_X: return p.motion.position.x;
        case StateId::POSITION_Y: return p.motion.position.y;
        case StateId::ORIENTATION: return normalize_angle(p.motion.heading);
        case StateId::SPEED: return speed;
        case StateId::VELOCITY_X: return speed * std::cos(p.motion.heading);
        case StateId::VELOCITY_Y: return speed * std::sin(p.motion.heading);
    }
    return 0.0;
}

}  // namespace

std::vector<double> sample_log_row(const WorldState& world,
                                   const std::vector<scenario::LogItemDescription>& descriptions) {
    std::vector<double> row;
    row.reserve(descriptions.size());
    for (const auto& d : descriptions) {
        switch (d.item_type) {
            case ItemType::TIME: row.push_back(static_cast<double>(world.sim_time_ms)); break;
            case ItemType::VEHICLE:
                row.push_back(vehicle_state(world, world.vehicles.at(static_cast<std::size_t>(d.item_index)),
                                            d.item_state_index));
                break;
            case ItemType::PEDESTRIAN:
                row.push_back(
                    pedestrian_state(world.pedestrians.at(static_cast<std::size_t>(d.item_index)), d.item_state_index));
                break;
        }
    }
    return row;
}

}  // namespace avtest::sim
