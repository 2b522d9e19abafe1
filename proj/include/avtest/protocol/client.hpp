#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "avtest/protocol/socket.hpp"
#include "avtest/scenario/types.hpp"

namespace avtest::protocol {

struct ClientOptions {
    int max_connection_retry = 3;
    std::chrono::milliseconds retry_backoff{1000};
    // Session aborts when no message arrives for this long.
    std::chrono::milliseconds timeout{120000};
};

struct SessionStats {
    int connection_attempts = 0;
    std::size_t heartbeats = 0;
    std::size_t continues = 0;
    bool finished_heartbeat = false;
    // Tags of every frame received, in order.
    std::vector<Tag> received;
};

// Configurator side of one supervisor session.
class SimulationClient {
public:
    explicit SimulationClient(Endpoint endpoint, ClientOptions options = {});

    // Retries with a fixed backoff, then throws ConnectError("could not
    // connect ..."). Completes the HELLO/ACK handshake.
    void connect();
    void setup_sim_environment(const scenario::SimEnvironment& env);
    scenario::Trajectory run_simulation_get_trace(const scenario::SimulationConfig& config,
                                                  std::uint8_t run_index = 0);
    void disconnect() { conn_.close(); }

    const SessionStats& stats() const { return stats_; }

private:
    WireMessage next();
    void expect_ack(const char* after);

    Endpoint endpoint_;
    ClientOptions options_;
    Connection conn_;
    scenario::SyncType sync_ = scenario::SyncType::NO_HEART_BEAT;
    SessionStats stats_;
};

// connect, setup, run, collect the trace.
scenario::Trajectory client_session(const Endpoint& endpoint, const scenario::SimEnvironment& env,
                                    const scenario::SimulationConfig& config, const ClientOptions& options = {},
                                    SessionStats* stats = nullptr, std::uint8_t run_index = 0);

}  // namespace avtest::protocol
