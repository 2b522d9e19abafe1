#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "avtest/controllers/controller.hpp"
#include "avtest/controllers/pedestrian.hpp"
#include "avtest/controllers/registry.hpp"
#include "avtest/error.hpp"

namespace avtest::controllers {

double normalize_angle(double a) {
    constexpr double pi = std::numbers::pi;
    if (a > -pi && a <= pi) return a;
    a = std::remainder(a, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    return a;
}

ControlOutput saturate(ControlOutput u) {
    u.steering = std::clamp(u.steering, -kMaxSteeringRad, kMaxSteeringRad);
    u.acceleration = std::clamp(u.acceleration, kMinAcceleration, kMaxAcceleration);
    return u;
}

std::optional<Point> lookahead_point(const std::vector<Point>& path, Point pos, double lookahead) {
    if (path.empty()) return std::nullopt;
    if (path.size() == 1) return path.front();

    // Closest point on the polyline; the first segment wins ties.
    std::size_t best_seg = 0;
    double best_t = 0.0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const double sx = path[i + 1].x - path[i].x;
        const double sy = path[i + 1].y - path[i].y;
        const double len2 = sx * sx + sy * sy;
        double t = 0.0;
        if (len2 > 0.0) t = std::clamp(((pos.x - path[i].x) * sx + (pos.y - path[i].y) * sy) / len2, 0.0, 1.0);
        const double dx = path[i].x + t * sx - pos.x;
        const double dy = path[i].y + t * sy - pos.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best_seg = i;
            best_t = t;
        }
    }

    double remaining = lookahead;
    for (std::size_t i = best_seg; i + 1 < path.size(); ++i) {
        const double sx = path[i + 1].x - path[i].x;
        const double sy = path[i + 1].y - path[i].y;
        const double len = std::hypot(sx, sy);
        const double start = (i == best_seg) ? best_t * len : 0.0;
        const double available = len - start;
        const bool last = i + 2 == path.size();
        if (len > 0.0 && (remaining <= available || last)) {
            const double s = (start + remaining) / len;
            return Point{path[i].x + s * sx, path[i].y + s * sy};
        }
        remaining -= available;
    }
    return path.back();
}

double pure_pursuit_steering(const Kinematics& self, Point target, double wheelbase) {
    const double dx = target.x - self.x;
    const double dy = target.y - self.y;
    const double dist = std::hypot(dx, dy);
    if (dist < 1e-9) return 0.0;
    const double alpha = normalize_angle(std::atan2(dy, dx) - self.heading);
    return std::atan2(2.0 * wheelbase * std::sin(alpha), dist);
}

namespace {

double steer_along(const std::vector<Point>& path, const Kinematics& self, double min_lookahead,
                   double lookahead_time) {
    const double lookahead = std::max(min_lookahead, lookahead_time * self.speed);
    const auto target = lookahead_point(path, Point{self.x, self.y}, lookahead);
    if (!target) return 0.0;
    return pure_pursuit_steering(self, *target);
}

}  // namespace

PathSpeedFollower::PathSpeedFollower(double target_speed, std::vector<Point> path)
    : target_speed_(target_speed), path_(std::move(path)) {}

ControlOutput PathSpeedFollower::compute(const ControlInput& in) const {
    ControlOutput u;
    u.steering = steer_along(path_, in.self, kMinLookahead, kLookaheadTime);
    u.acceleration = kSpeedGain * (target_speed_ - in.self.speed);
    return saturate(u);
}

AutomatedDrivingController::AutomatedDrivingController(double target_speed_kmh, double target_lat_pos,
                                                       std::vector<Point> path)
    : target_speed_kmh_(target_speed_kmh), target_lat_pos_(target_lat_pos), path_(std::move(path)) {}

ControlOutput AutomatedDrivingController::compute(const ControlInput& in) const {
    ControlOutput u;
    if (!path_.empty()) {
        u.steering = steer_along(path_, in.self, PathSpeedFollower::kMinLookahead, PathSpeedFollower::kLookaheadTime);
    } else {
        const double dir = std::cos(in.self.heading) >= 0.0 ? 1.0 : -1.0;
        const std::vector<Point> lane{{-dir * 1e6, target_lat_pos_}, {dir * 1e6, target_lat_pos_}};
        u.steering = steer_along(lane, in.self, PathSpeedFollower::kMinLookahead, PathSpeedFollower::kLookaheadTime);
    }
    u.acceleration = PathSpeedFollower::kSpeedGain * (target_speed_mps() - in.self.speed);

    for (const auto& d : in.radar) {
        if (d.relative_speed >= 0.0 || std::abs(d.relative_bearing) >= kBrakeBearing) continue;
        if (d.relative_range / -d.relative_speed < kBrakeTimeToCollision) {
            u.acceleration = kMinAcceleration;
            break;
        }
    }
    return saturate(u);
}

// ---------------------------------------------------------------------------
// Registry

namespace {

constexpr std::string_view kVoid = "void";
constexpr std::string_view kPathFollower = "path_and_speed_follower";
constexpr std::string_view kAutomatedDriving = "automated_driving_with_fusion2";
constexpr std::string_view kAutomatedDrivingV1 = "automated_driving_with_fusion";
constexpr std::string_view kPedestrianControl = "pedestrian_control";

double parse_number(const std::string& text, const std::string& controller, std::size_t arg) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw SetupError("controller '" + controller + "': argument " + std::to_string(arg) + " ('" + text +
                         "') is not a number");
    return v;
}

void parse_flag(const std::string& text, const std::string& controller, std::size_t arg) {
    if (text != "True" && text != "False" && text != "true" && text != "false")
        throw SetupError("controller '" + controller + "': argument " + std::to_string(arg) + " ('" + text +
                         "') is not a boolean");
}

std::vector<Point> target_path(const std::vector<scenario::ControllerParameter>& params,
                               const std::string& controller) {
    std::vector<Point> path;
    for (const auto& p : params) {
        if (p.parameter_name != "target_position") continue;
        if (p.parameter_data.size() != 2)
            throw SetupError("controller '" + controller + "': target_position needs exactly 2 values");
        path.push_back({p.parameter_data[0], p.parameter_data[1]});
    }
    return path;
}

}  // namespace

bool is_vehicle_controller(std::string_view name) {
    return name == kVoid || name == kPathFollower || name == kAutomatedDriving || name == kAutomatedDrivingV1;
}

bool is_pedestrian_controller(std::string_view name) { return name == kVoid || name == kPedestrianControl; }

std::vector<std::string> vehicle_controller_names() {
    return {std::string(kVoid), std::string(kPathFollower), std::string(kAutomatedDriving),
            std::string(kAutomatedDrivingV1)};
}

std::vector<scenario::ControllerParameter> params_for(const scenario::Vehicle& vehicle,
                                                      const std::vector<scenario::ControllerParameter>& all) {
    std::vector<scenario::ControllerParameter> out;
    for (const auto& p : all)
        if (!p.vehicle_id || *p.vehicle_id == vehicle.vhc_id) out.push_back(p);
    return out;
}

std::shared_ptr<const VehicleController> make_vehicle_controller(
    const scenario::Vehicle& vehicle, const std::vector<scenario::ControllerParameter>& params) {
    const auto& name = vehicle.controller;
    const auto& args = vehicle.controller_arguments;

    if (name == kVoid) return std::make_shared<VoidController>();

    if (name == kPathFollower) {
        if (args.empty()) throw SetupError("controller '" + name + "': missing target speed argument");
        return std::make_shared<PathSpeedFollower>(parse_number(args[0], name, 0), target_path(params, name));
    }

    if (name == kAutomatedDriving || name == kAutomatedDrivingV1) {
        // car_model, target_speed_kmh, target_lat_pos, self_vhc_id,
        // slow_at_intersection, has_gpu, processor_id
        if (args.size() < 2) throw SetupError("controller '" + name + "': missing target speed argument");
        const double speed_kmh = parse_number(args[1], name, 1);
        const double lat = args.size() > 2 ? parse_number(args[2], name, 2) : 0.0;
        if (args.size() > 3) parse_number(args[3], name, 3);
        if (args.size() > 4) parse_flag(args[4], name, 4);
        if (args.size() > 5) parse_flag(args[5], name, 5);
        if (args.size() > 6) parse_number(args[6], name, 6);
        return std::make_shared<AutomatedDrivingController>(speed_kmh, lat, target_path(params, name));
    }

    throw SetupError("unregistered controller '" + name + "'");
}

// ---------------------------------------------------------------------------
// Pedestrians

std::vector<Point> waypoints_from_flat(const std::vector<double>& flat) {
    std::vector<Point> out;
    out.reserve(flat.size() / 2);
    for (std::size_t i = 0; i + 1 < flat.size(); i += 2) out.push_back({flat[i], flat[i + 1]});
    return out;
}

PedestrianMotion pedestrian_control(PedestrianMotion state, double target_speed, const std::vector<Point>& waypoints,
                                    double dt_s) {
    constexpr double kArrived = 1e-9;
    state.moving = false;
    while (state.waypoint < waypoints.size()) {
        const double dx = waypoints[state.waypoint].x - state.position.x;
        const double dy = waypoints[state.waypoint].y - state.position.y;
        const double dist = std::hypot(dx, dy);
        if (dist <= kArrived) {
            state.position = waypoints[state.waypoint];
            ++state.waypoint;
            continue;
        }
        const double step = target_speed * dt_s;
        if (step <= 0.0) return state;
        state.heading = std::atan2(dy, dx);
        state.moving = true;
        if (step >= dist) {
            state.position = waypoints[state.waypoint];
            ++state.waypoint;
        } else {
            state.position.x += dx / dist * step;
            state.position.y += dy / dist * step;
        }
        return state;
    }
    return state;
}

}  // namespace avtest::controllers
