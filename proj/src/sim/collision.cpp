#include "avtest/sim/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avtest/sim/world.hpp"

namespace avtest::sim {

using controllers::Point;

std::array<Point, 4> OrientedBox::corners() const {
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    const double lx = half_length * c, ly = half_length * s;
    const double wx = -half_width * s, wy = half_width * c;
    return {Point{center.x + lx + wx, center.y + ly + wy}, Point{center.x - lx + wx, center.y - ly + wy},
            Point{center.x - lx - wx, center.y - ly - wy}, Point{center.x + lx - wx, center.y + ly - wy}};
}

OrientedBox vehicle_footprint(double x, double y, double heading) {
    return {{x, y}, heading, kVehicleLength / 2.0, kVehicleWidth / 2.0};
}

namespace {

struct Interval {
    double lo, hi;
};

Interval project(const OrientedBox& b, double ax, double ay) {
    const double c = std::cos(b.heading);
    const double s = std::sin(b.heading);
    const double center = b.center.x * ax + b.center.y * ay;
    const double radius = b.half_length * std::abs(c * ax + s * ay) + b.half_width * std::abs(-s * ax + c * ay);
    return {center - radius, center + radius};
}

}  // namespace

std::optional<double> box_overlap(const OrientedBox& a, const OrientedBox& b) {
    const std::array<double, 2> headings{a.heading, b.heading};
    double depth = std::numeric_limits<double>::infinity();
    for (double h : headings) {
        const double c = std::cos(h);
        const double s = std::sin(h);
        for (auto [ax, ay] : {std::pair{c, s}, std::pair{-s, c}}) {
            const auto pa = project(a, ax, ay);
            const auto pb = project(b, ax, ay);
            const double overlap = std::min(pa.hi, pb.hi) - std::max(pa.lo, pb.lo);
            if (overlap <= 0.0) return std::nullopt;
            depth = std::min(depth, overlap);
        }
    }
    return depth;
}

std::optional<double> box_disc_overlap(const OrientedBox& box, Point center, double radius) {
    const double c = std::cos(box.heading);
    const double s = std::sin(box.heading);
    const double dx = center.x - box.center.x;
    const double dy = center.y - box.center.y;
    const double lx = dx * c + dy * s;
    const double ly = -dx * s + dy * c;
    const double qx = std::clamp(lx, -box.half_length, box.half_length);
    const double qy = std::clamp(ly, -box.half_width, box.half_width);
    const bool inside = qx == lx && qy == ly;
    if (inside) {
        const double to_edge = std::min(box.half_length - std::abs(lx), box.half_width - std::abs(ly));
        return radius + to_edge;
    }
    const double dist = std::hypot(lx - qx, ly - qy);
    if (dist >= radius) return std::nullopt;
    return radius - dist;
}

std::vector<Contact> detect_collisions(const WorldState& world) {
    std::vector<Contact> out;
    const auto& vs = world.vehicles;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto fi = vehicle_footprint(vs[i].x, vs[i].y, vs[i].heading);
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            const auto fj = vehicle_footprint(vs[j].x, vs[j].y, vs[j].heading);
            if (auto depth = box_overlap(fi, fj))
                out.push_back({ContactKind::VEHICLE_VEHICLE, {vs[i].id, vs[j].id}, world.sim_time_ms, *depth});
        }
        for (const auto& p : world.pedestrians) {
            if (auto depth = box_disc_overlap(fi, p.motion.position, kPedestrianRadius))
                out.push_back({ContactKind::VEHICLE_PEDESTRIAN, {vs[i].id, p.id}, world.sim_time_ms, *depth});
        }
    }
    return out;
}

}  // namespace avtest::sim
