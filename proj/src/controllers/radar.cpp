#include "avtest/controllers/radar.hpp"

#include <algorithm>
#include <cmath>

namespace avtest::controllers {

std::vector<RadarDetection> radar_sense(const Kinematics& self, std::span<const RadarTarget> targets,
                                        double max_range) {
    const double self_vx = self.speed * std::cos(self.heading);
    const double self_vy = self.speed * std::sin(self.heading);

    std::vector<RadarDetection> out;
    for (const auto& t : targets) {
        const double dx = t.x - self.x;
        const double dy = t.y - self.y;
        const double range = std::hypot(dx, dy);
        if (range > max_range) continue;
        const double bearing = range > 0.0 ? normalize_angle(std::atan2(dy, dx) - self.heading) : 0.0;
        if (std::abs(bearing) > kRadarHalfFov) continue;
        const double rate = range > 0.0 ? ((t.vx - self_vx) * dx + (t.vy - self_vy) * dy) / range : 0.0;
        out.push_back({range, bearing, rate});
    }
    std::stable_sort(out.begin(), out.end(), [](const RadarDetection& a, const RadarDetection& b) {
        return a.relative_range < b.relative_range;
    });
    return out;
}

}  // namespace avtest::controllers
