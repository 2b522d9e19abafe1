#pragma once

#include <span>
#include <vector>

#include "avtest/controllers/controller.hpp"

namespace avtest::controllers {

inline constexpr double kRadarRange = 80.0;
inline constexpr double kRadarHalfFov = 0.7853981633974483;  // pi/4

struct RadarTarget {
    double x = 0.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;
};

// Ground-truth radar: targets within `max_range` and |bearing| <= pi/4 in the
// sensor frame, ordered by range (ties keep input order).
std::vector<RadarDetection> radar_sense(const Kinematics& self, std::span<const RadarTarget> targets,
                                        double max_range = kRadarRange);

}  // namespace avtest::controllers
