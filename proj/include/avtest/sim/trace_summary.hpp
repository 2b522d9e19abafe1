#pragma once

#include <limits>
#include <optional>

#include "avtest/scenario/types.hpp"

namespace avtest::sim {

struct TraceSummary {
    double min_vehicle_distance = std::numeric_limits<double>::infinity();
    bool collision = false;
    std::optional<double> first_collision_time_ms;
};

// Reconstructs footprints from logged positions (and orientation, when
// logged; heading 0 otherwise) and replays the contact check per row.
TraceSummary summarize_trajectory(const scenario::Trajectory& trajectory);

}  // namespace avtest::sim
