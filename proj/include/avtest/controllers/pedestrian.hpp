#pragma once

#include <cstddef>
#include <vector>

#include "avtest/controllers/controller.hpp"

namespace avtest::controllers {

struct PedestrianMotion {
    Point position;
    std::size_t waypoint = 0;  // index of the waypoint currently walked toward
    double heading = 0.0;
    bool moving = false;

    bool operator==(const PedestrianMotion&) const = default;
};

std::vector<Point> waypoints_from_flat(const std::vector<double>& flat);

// Walks min(speed * dt, distance to the current waypoint) toward it and
// switches to the next waypoint on arrival. Waypoints coinciding with the
// current position are skipped without consuming the step. After the last
// waypoint the pedestrian stays put.
PedestrianMotion pedestrian_control(PedestrianMotion state, double target_speed, const std::vector<Point>& waypoints,
                                    double dt_s);

}  // namespace avtest::controllers
