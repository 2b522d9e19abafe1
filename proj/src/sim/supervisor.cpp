#include "avtest/sim/supervisor.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <thread>

#include "avtest/error.hpp"
#include "avtest/scenario/document.hpp"
#include "avtest/scenario/validate.hpp"

namespace avtest::sim {

using scenario::RunMode;
using scenario::SyncType;

std::size_t expected_heartbeats(std::int64_t duration_ms, std::int64_t period_ms) {
    if (period_ms <= 0 || duration_ms <= 0) return 0;
    return static_cast<std::size_t>(duration_ms / period_ms);
}

namespace {

double min_pair_distance(const WorldState& world) {
    double best = std::numeric_limits<double>::infinity();
    const auto& vs = world.vehicles;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) best = std::min(best, std::hypot(vs[i].x - vs[j].x, vs[i].y - vs[j].y));
    return best;
}

using PairKey = std::tuple<ContactKind, int, int>;

void record_contacts(const WorldState& world, std::set<PairKey>& active, std::vector<Contact>& out) {
    std::set<PairKey> now;
    for (const auto& c : detect_collisions(world)) {
        PairKey key{c.kind, c.ids.first, c.ids.second};
        now.insert(key);
        if (!active.contains(key)) out.push_back(c);
    }
    active = std::move(now);
}

}  // namespace

RunOutput run(WorldState world, const scenario::SimEnvironment& env, const scenario::SimulationConfig& config,
              std::size_t run_index, HeartbeatSink* sink) {
    scenario::check_config(config);
    if (run_index >= config.run_config_arr.size())
        throw ProtocolError(error_code::kInvalidRun, "run index " + std::to_string(run_index) +
                                                         " has no run configuration (run_config_arr has " +
                                                         std::to_string(config.run_config_arr.size()) + " entries)");
    if (!env.data_log_period_ms || *env.data_log_period_ms <= 0)
        throw ValidationError("data_log_period_ms must be set to run a simulation");
    const std::int64_t log_period = *env.data_log_period_ms;
    const std::int64_t dt = config.sim_step_size_ms;
    if (log_period % dt != 0) throw ValidationError("data_log_period_ms must be a multiple of sim_step_size");

    const auto mode = config.run_config_arr[run_index].simulation_run_mode;
    const SyncType sync = env.heart_beat_config ? env.heart_beat_config->sync_type : SyncType::NO_HEART_BEAT;
    const std::int64_t hb_period = env.heart_beat_config ? env.heart_beat_config->period_ms : 0;

    RunOutput out;
    out.trajectory.columns = env.data_log_description_list;
    out.trajectory.rows.reserve(static_cast<std::size_t>(config.sim_duration_ms / log_period) + 1);
    out.trajectory.rows.push_back(sample_log_row(world, env.data_log_description_list));
    out.min_vehicle_distance = min_pair_distance(world);
    std::set<PairKey> active;
    record_contacts(world, active, out.contacts);

    const auto wall_start = std::chrono::steady_clock::now();
    const std::int64_t steps = config.sim_duration_ms / dt;
    for (std::int64_t k = 1; k <= steps; ++k) {
        step(world, dt);
        const auto t = static_cast<std::int64_t>(world.sim_time_ms);

        if (t % log_period == 0) out.trajectory.rows.push_back(sample_log_row(world, env.data_log_description_list));
        out.min_vehicle_distance = std::min(out.min_vehicle_distance, min_pair_distance(world));
        record_contacts(world, active, out.contacts);

        if (mode == RunMode::REAL_TIME)
            std::this_thread::sleep_until(wall_start + std::chrono::milliseconds(t));

        if (sync != SyncType::NO_HEART_BEAT && sink && t / hb_period > (t - dt) / hb_period) {
            sink->on_heartbeat({static_cast<std::uint64_t>(t), t == config.sim_duration_ms});
            if (sync == SyncType::WITH_SYNC && !sink->await_continue())
                throw ProtocolError(error_code::kContinueTimeout,
                                    "CONTINUE not received after heartbeat at " + std::to_string(t) + " ms");
        }
    }
    return out;
}

RunOutput execute_scenario(const scenario::SimEnvironment& env, const scenario::SimulationConfig& config,
                           std::size_t run_index, HeartbeatSink* sink, const KernelOptions& options) {
    const auto report = scenario::validate_environment(env);
    if (!report.empty()) throw SetupError("invalid environment:\n" + scenario::format_report(report));
    WorldState world = build_world(env, config, options);
    apply_initial_states(world, env.initial_state_config_list);
    return run(std::move(world), env, config, run_index, sink);
}

}  // namespace avtest::sim
