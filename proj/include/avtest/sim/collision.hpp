#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "avtest/controllers/controller.hpp"

namespace avtest::sim {

struct WorldState;

inline constexpr double kVehicleLength = 4.8;
inline constexpr double kVehicleWidth = 1.8;
inline constexpr double kPedestrianRadius = 0.25;

struct OrientedBox {
    controllers::Point center;
    double heading = 0.0;
    double half_length = 0.0;
    double half_width = 0.0;

    std::array<controllers::Point, 4> corners() const;
};

OrientedBox vehicle_footprint(double x, double y, double heading);

// Penetration depth (minimum separating-axis overlap) when the interiors
// overlap, nullopt otherwise. Touching boxes do not collide.
std::optional<double> box_overlap(const OrientedBox& a, const OrientedBox& b);
std::optional<double> box_disc_overlap(const OrientedBox& box, controllers::Point center, double radius);

enum class ContactKind { VEHICLE_VEHICLE, VEHICLE_PEDESTRIAN };

struct Contact {
    ContactKind kind = ContactKind::VEHICLE_VEHICLE;
    std::pair<int, int> ids;  // (vehicle id, vehicle id) or (vehicle id, pedestrian id)
    std::uint64_t time_ms = 0;
    double penetration = 0.0;

    bool operator==(const Contact&) const = default;
};

std::vector<Contact> detect_collisions(const WorldState& world);

}  // namespace avtest::sim
