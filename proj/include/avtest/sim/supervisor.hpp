#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "avtest/scenario/types.hpp"
#include "avtest/sim/collision.hpp"
#include "avtest/sim/world.hpp"

namespace avtest::sim {

struct Heartbeat {
    std::uint64_t sim_time_ms = 0;
    bool finished = false;
};

// Receives heartbeats during a run. In WITH_SYNC mode the kernel blocks in
// await_continue() after every heartbeat; returning false aborts the run.
class HeartbeatSink {
public:
    virtual ~HeartbeatSink() = default;
    virtual void on_heartbeat(const Heartbeat& hb) = 0;
    virtual bool await_continue() = 0;
};

// Acknowledges every heartbeat immediately and counts them.
class CountingSink final : public HeartbeatSink {
public:
    void on_heartbeat(const Heartbeat& hb) override {
        ++heartbeats;
        last = hb;
    }
    bool await_continue() override {
        ++continues;
        return true;
    }

    std::size_t heartbeats = 0;
    std::size_t continues = 0;
    Heartbeat last;
};

struct RunOutput {
    scenario::Trajectory trajectory;
    // Contact onsets: one entry each time a pair starts touching.
    std::vector<Contact> contacts;
    double min_vehicle_distance = std::numeric_limits<double>::infinity();
};

// Heartbeat emission times for a run: every period boundary crossed, up to
// and including the duration.
std::size_t expected_heartbeats(std::int64_t duration_ms, std::int64_t period_ms);

RunOutput run(WorldState world, const scenario::SimEnvironment& env, const scenario::SimulationConfig& config,
              std::size_t run_index = 0, HeartbeatSink* sink = nullptr);

// validate -> build_world -> apply_initial_states -> run. Used by the socket
// supervisor and by embedded execution, so both produce identical traces.
RunOutput execute_scenario(const scenario::SimEnvironment& env, const scenario::SimulationConfig& config,
                           std::size_t run_index = 0, HeartbeatSink* sink = nullptr,
                           const KernelOptions& options = {});

}  // namespace avtest::sim
