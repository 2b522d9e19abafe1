#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "avtest/controllers/controller.hpp"
#include "avtest/controllers/pedestrian.hpp"
#include "avtest/controllers/radar.hpp"
#include "avtest/scenario/types.hpp"

namespace avtest::sim {

struct KernelOptions {
    // Limit radar range by fog visibility. Off by default: fog only affects
    // cameras, and no camera exists in this kernel.
    bool fog_limits_radar = false;
    std::uint64_t seed = 0;
};

struct VehicleState {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;
    double speed = 0.0;
    bool has_radar = false;
    std::shared_ptr<const controllers::VehicleController> controller;

    controllers::Kinematics kinematics() const { return {x, y, heading, speed}; }
};

struct PedestrianState {
    int id = 0;
    bool walking = false;  // controlled by pedestrian_control
    double target_speed = 0.0;
    std::vector<controllers::Point> waypoints;
    controllers::PedestrianMotion motion;
};

struct StaticGeometry {
    std::vector<scenario::Road> roads;
    std::vector<scenario::RoadDisturbance> disturbances;
    std::vector<scenario::GenericObject> objects;
};

// Entity order matches the environment: ego vehicles first, then agents.
// That order defines the item_index used by data logs and initial states.
struct WorldState {
    std::uint64_t sim_time_ms = 0;
    std::vector<VehicleState> vehicles;
    std::vector<PedestrianState> pedestrians;
    StaticGeometry static_geometry;
    std::optional<double> fog_visibility;
    KernelOptions options;
};

// Planar heading (counter-clockwise from +x) for a vehicle orientation given
// as a clockwise rotation about the vertical axis with +z as forward.
double heading_from_orientation(double orientation);

// Throws SetupError for unknown controllers or malformed arguments.
WorldState build_world(const scenario::SimEnvironment& env, const scenario::SimulationConfig& config,
                       const KernelOptions& options = {});

void apply_initial_states(WorldState& world, const std::vector<scenario::InitialStateConfig>& configs);

// Advances every entity by dt_ms using the controllers' commands computed on
// the pre-step state.
void step(WorldState& world, std::int64_t dt_ms);

// Single vehicle kinematic bicycle update with saturation.
void integrate_vehicle(VehicleState& v, controllers::ControlOutput u, double dt_s);

std::vector<controllers::RadarDetection> radar_sense(const WorldState& world, std::size_t self_index);

// Lateral offset that road disturbances add to a vehicle's logged position.
double disturbance_offset(const StaticGeometry& geometry, double x, double y);

std::vector<double> sample_log_row(const WorldState& world,
                                   const std::vector<scenario::LogItemDescription>& descriptions);

}  // namespace avtest::sim
