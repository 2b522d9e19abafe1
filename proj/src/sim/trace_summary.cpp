#include "avtest/sim/trace_summary.hpp"

#include <cmath>
#include <map>

#include "avtest/scenario/trace_dict.hpp"
#include "avtest/sim/collision.hpp"
#include "avtest/sim/world.hpp"

namespace avtest::sim {

using scenario::ItemType;
using scenario::StateId;
using scenario::StateKey;

TraceSummary summarize_trajectory(const scenario::Trajectory& trajectory) {
    const auto dict = scenario::populate_trace_dict(trajectory.columns);
    const auto time_col = dict.find(StateKey{});

    std::map<int, bool> vehicles, pedestrians;
    for (const auto& c : trajectory.columns) {
        if (c.item_type == ItemType::VEHICLE) vehicles[c.item_index] = true;
        if (c.item_type == ItemType::PEDESTRIAN) pedestrians[c.item_index] = true;
    }

    struct Columns {
        int index;
        std::size_t x, y;
        std::optional<std::size_t> heading;
    };
    auto columns_of = [&](const std::map<int, bool>& items, ItemType type) {
        std::vector<Columns> out;
        for (const auto& [idx, _] : items) {
            auto x = dict.find({type, idx, StateId::POSITION_X});
            auto y = dict.find({type, idx, StateId::POSITION_Y});
            if (!x || !y) continue;
            out.push_back({idx, *x, *y, dict.find({type, idx, StateId::ORIENTATION})});
        }
        return out;
    };
    const auto vcols = columns_of(vehicles, ItemType::VEHICLE);
    const auto pcols = columns_of(pedestrians, ItemType::PEDESTRIAN);

    TraceSummary summary;
    for (const auto& row : trajectory.rows) {
        WorldState world;
        for (const auto& c : vcols) {
            VehicleState v;
            v.id = c.index;
            v.x = row[c.x];
            v.y = row[c.y];
            v.heading = c.heading ? row[*c.heading] : 0.0;
            world.vehicles.push_back(v);
        }
        for (const auto& c : pcols) {
            PedestrianState p;
            p.id = c.index;
            p.motion.position = {row[c.x], row[c.y]};
            world.pedestrians.push_back(p);
        }
        for (std::size_t i = 0; i < world.vehicles.size(); ++i)
            for (std::size_t j = i + 1; j < world.vehicles.size(); ++j)
                summary.min_vehicle_distance =
                    std::min(summary.min_vehicle_distance, std::hypot(world.vehicles[i].x - world.vehicles[j].x,
                                                                      world.vehicles[i].y - world.vehicles[j].y));
        if (!summary.collision && !detect_collisions(world).empty()) {
            summary.collision = true;
            if (time_col) summary.first_collision_time_ms = row[*time_col];
        }
    }
    return summary;
}

}  // namespace avtest::sim
