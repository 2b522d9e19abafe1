#include "avtest/protocol/server.hpp"

#include <iostream>
#include <optional>

#include "avtest/scenario/validate.hpp"
#include "avtest/sim/supervisor.hpp"

namespace avtest::protocol {

namespace {

constexpr std::chrono::milliseconds kAcceptPoll{100};

class WireSink final : public sim::HeartbeatSink {
public:
    WireSink(Connection& conn, std::chrono::milliseconds timeout) : conn_(conn), timeout_(timeout) {}

    void on_heartbeat(const sim::Heartbeat& hb) override {
        conn_.send(Heartbeat{hb.sim_time_ms, hb.finished ? SimStatus::FINISHED : SimStatus::RUNNING});
    }

    bool await_continue() override {
        auto msg = conn_.receive(timeout_);
        if (!msg) return false;
        if (!std::holds_alternative<Continue>(*msg))
            throw ProtocolError(error_code::kUnexpectedMessage,
                                "expected CONTINUE, got " + std::string(tag_name(tag_of(*msg))));
        return true;
    }

private:
    Connection& conn_;
    std::chrono::milliseconds timeout_;
};

void report(Connection& conn, std::uint16_t code, const std::string& message) {
    try {
        conn.send(ErrorReport{code, message});
    } catch (const ProtocolError&) {
        // peer already gone
    }
}

}  // namespace

void serve_connection(Connection& conn, const ServerOptions& options) {
    bool greeted = false;
    std::optional<scenario::SimEnvironment> env;

    while (conn.is_open()) {
        std::optional<WireMessage> msg;
        try {
            msg = conn.receive(options.idle_timeout);
        } catch (const ProtocolError& e) {
            if (e.code() != error_code::kConnectionLost) report(conn, e.code(), e.what());
            return;
        }
        if (!msg) return;

        try {
            if (const auto* hello = std::get_if<Hello>(&*msg)) {
                if (hello->protocol_version != kProtocolVersion) {
                    report(conn, error_code::kVersionMismatch,
                           "unsupported protocol version " + std::to_string(hello->protocol_version));
                    return;
                }
                greeted = true;
                conn.send(Ack{});
                continue;
            }
            if (!greeted) {
                report(conn, error_code::kUnexpectedMessage, "session must start with HELLO");
                return;
            }
            if (auto* setup = std::get_if<SetupEnvironment>(&*msg)) {
                const auto violations = scenario::validate_environment(setup->env);
                if (!violations.empty()) {
                    report(conn, error_code::kSetupFailed, "invalid environment:\n" + scenario::format_report(violations));
                    continue;
                }
                // Instantiate once so controller errors surface at setup.
                sim::build_world(setup->env, {}, options.kernel);
                env = std::move(setup->env);
                conn.send(Ack{});
                continue;
            }
            if (const auto* start = std::get_if<StartSim>(&*msg)) {
                if (!env) {
                    report(conn, error_code::kUnexpectedMessage, "START_SIM before SETUP_ENVIRONMENT");
                    continue;
                }
                WireSink sink(conn, options.continue_timeout);
                auto out = sim::execute_scenario(*env, start->config, start->run_index, &sink, options.kernel);
                conn.send(TraceData{std::move(out.trajectory)});
                continue;
            }
            report(conn, error_code::kUnexpectedMessage,
                   "unexpected " + std::string(tag_name(tag_of(*msg))) + " from client");
        } catch (const SetupError& e) {
            report(conn, error_code::kSetupFailed, e.what());
        } catch (const ProtocolError& e) {
            if (e.code() == error_code::kConnectionLost) return;
            report(conn, e.code(), e.what());
            // A broken run leaves the stream in an unknown state.
            if (e.code() == error_code::kContinueTimeout || e.code() < 100) return;
        } catch (const ValidationError& e) {
            report(conn, error_code::kInvalidRun, e.what());
        }
    }
}

SupervisorServer::SupervisorServer(ServerOptions options)
    : options_(std::move(options)), listener_(options_.bind_address, options_.port) {}

SupervisorServer::~SupervisorServer() { stop(); }

void SupervisorServer::serve(std::size_t max_sessions) {
    std::size_t accepted = 0;
    while (!stopping_ && (max_sessions == 0 || accepted < max_sessions)) {
        auto conn = listener_.accept(kAcceptPoll);
        if (!conn) continue;
        ++accepted;
        std::lock_guard lock(workers_mutex_);
        workers_.emplace_back([this, c = std::move(*conn)]() mutable { handle(std::move(c)); });
    }
    std::vector<std::thread> workers;
    {
        std::lock_guard lock(workers_mutex_);
        workers.swap(workers_);
    }
    for (auto& t : workers) t.join();
}

void SupervisorServer::handle(Connection conn) {
    try {
        serve_connection(conn, options_);
    } catch (const std::exception& e) {
        std::cerr << "session error: " << e.what() << "\n";
    }
    ++sessions_served_;
}

void SupervisorServer::start() {
    accept_thread_ = std::thread([this] { serve(); });
}

void SupervisorServer::stop() {
    stopping_ = true;
    if (accept_thread_.joinable()) accept_thread_.join();
}

}  // namespace avtest::protocol
