#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace avtest::controllers {

// Actuation limits applied by the kernel after every controller call.
inline constexpr double kMaxSteeringRad = 0.6;
inline constexpr double kMinAcceleration = -8.0;
inline constexpr double kMaxAcceleration = 3.0;
inline constexpr double kWheelbase = 2.8;

struct ControlOutput {
    double steering = 0.0;      // rad, positive turns counter-clockwise
    double acceleration = 0.0;  // m/s^2

    bool operator==(const ControlOutput&) const = default;
};

ControlOutput saturate(ControlOutput u);

struct RadarDetection {
    double relative_range = 0.0;    // m
    double relative_bearing = 0.0;  // rad in (-pi, pi], 0 = straight ahead
    double relative_speed = 0.0;    // range rate in m/s, negative while closing

    bool operator==(const RadarDetection&) const = default;
};

// Planar rigid-body state as seen by a controller.
struct Kinematics {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;  // rad, counter-clockwise from +x
    double speed = 0.0;    // m/s, never negative
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

struct ControlInput {
    Kinematics self;
    std::span<const RadarDetection> radar;
    double dt_s = 0.0;
};

// Controllers are immutable after construction; compute() depends only on
// its input, so one instance can be shared between copies of a world.
class VehicleController {
public:
    virtual ~VehicleController() = default;
    virtual ControlOutput compute(const ControlInput& in) const = 0;
    virtual bool uses_radar() const { return false; }
};

class VoidController final : public VehicleController {
public:
    ControlOutput compute(const ControlInput&) const override { return {}; }
};

// Pure-pursuit lateral control with proportional speed tracking.
class PathSpeedFollower final : public VehicleController {
public:
    static constexpr double kSpeedGain = 1.0;
    static constexpr double kMinLookahead = 5.0;
    static constexpr double kLookaheadTime = 1.5;

    PathSpeedFollower(double target_speed, std::vector<Point> path);
    ControlOutput compute(const ControlInput& in) const override;

    double target_speed() const { return target_speed_; }
    const std::vector<Point>& path() const { return path_; }

private:
    double target_speed_;
    std::vector<Point> path_;
};

// Ego controller: path tracking plus radar-triggered emergency braking.
// Perception-related arguments are accepted and ignored.
class AutomatedDrivingController final : public VehicleController {
public:
    static constexpr double kBrakeTimeToCollision = 2.0;
    static constexpr double kBrakeBearing = 0.35;

    AutomatedDrivingController(double target_speed_kmh, double target_lat_pos, std::vector<Point> path);
    ControlOutput compute(const ControlInput& in) const override;
    bool uses_radar() const override { return true; }

    double target_speed_mps() const { return target_speed_kmh_ / 3.6; }

private:
    double target_speed_kmh_;
    double target_lat_pos_;
    std::vector<Point> path_;
};

// Lookahead target along a polyline, starting from the closest point on the
// path to `pos`. Past the last vertex the final segment is extended.
std::optional<Point> lookahead_point(const std::vector<Point>& path, Point pos, double lookahead);

// Bicycle-model pure pursuit steering toward `target`.
double pure_pursuit_steering(const Kinematics& self, Point target, double wheelbase = kWheelbase);

double normalize_angle(double a);

}  // namespace avtest::controllers
