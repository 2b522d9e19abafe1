#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "avtest/protocol/socket.hpp"
#include "avtest/sim/world.hpp"

namespace avtest::protocol {

struct ServerOptions {
    std::string bind_address = "127.0.0.1";
    std::uint16_t port = 10021;  // 0 = ephemeral
    sim::KernelOptions kernel;
    std::chrono::milliseconds continue_timeout{120000};
    // A connection with no request for this long is closed.
    std::chrono::milliseconds idle_timeout{120000};
};

// Simulation supervisor. Each accepted connection gets its own thread and
// its own simulation instance.
class SupervisorServer {
public:
    // Binds immediately; throws ConnectError when the port is taken.
    explicit SupervisorServer(ServerOptions options);
    ~SupervisorServer();
    SupervisorServer(const SupervisorServer&) = delete;
    SupervisorServer& operator=(const SupervisorServer&) = delete;

    std::uint16_t port() const { return listener_.port(); }

    // Accept loop; returns after stop() or once max_sessions connections have
    // been accepted and finished (0 = unlimited).
    void serve(std::size_t max_sessions = 0);
    // Runs serve() on a background thread.
    void start();
    void stop();

    std::size_t sessions_served() const { return sessions_served_; }

private:
    void handle(Connection conn);

    ServerOptions options_;
    Listener listener_;
    std::atomic<bool> stopping_{false};
    std::atomic<std::size_t> sessions_served_{0};
    std::thread accept_thread_;
    std::mutex workers_mutex_;
    std::vector<std::thread> workers_;
};

// Handles one session on an already accepted connection until the peer
// disconnects or a fatal error is reported.
void serve_connection(Connection& conn, const ServerOptions& options);

}  // namespace avtest::protocol
