#include "avtest/protocol/client.hpp"

#include <thread>

namespace avtest::protocol {

SimulationClient::SimulationClient(Endpoint endpoint, ClientOptions options)
    : endpoint_(std::move(endpoint)), options_(options) {}

void SimulationClient::connect() {
    const int attempts = std::max(1, options_.max_connection_retry);
    std::string last;
    for (int i = 0; i < attempts; ++i) {
        if (i > 0) std::this_thread::sleep_for(options_.retry_backoff);
        ++stats_.connection_attempts;
        try {
            conn_ = Connection::connect_to(endpoint_);
            break;
        } catch (const ConnectError& e) {
            last = e.what();
        }
    }
    if (!conn_.is_open())
        throw ConnectError("could not connect to " + endpoint_.to_string() + " after " + std::to_string(attempts) +
                           " attempts: " + last);
    conn_.send(Hello{});
    expect_ack("HELLO");
}

WireMessage SimulationClient::next() {
    auto msg = conn_.receive(options_.timeout);
    if (!msg)
        throw ProtocolError(error_code::kTimeout,
                            "no message from supervisor within " + std::to_string(options_.timeout.count()) + " ms");
    stats_.received.push_back(tag_of(*msg));
    if (const auto* err = std::get_if<ErrorReport>(&*msg))
        throw ProtocolError(err->code, "supervisor error " + std::to_string(err->code) + ": " + err->message);
    return std::move(*msg);
}

void SimulationClient::expect_ack(const char* after) {
    const auto msg = next();
    if (!std::holds_alternative<Ack>(msg))
        throw ProtocolError(error_code::kUnexpectedMessage, std::string("expected ACK after ") + after + ", got " +
                                                                std::string(tag_name(tag_of(msg))));
}

void SimulationClient::setup_sim_environment(const scenario::SimEnvironment& env) {
    sync_ = env.heart_beat_config ? env.heart_beat_config->sync_type : scenario::SyncType::NO_HEART_BEAT;
    conn_.send(SetupEnvironment{env});
    expect_ack("SETUP_ENVIRONMENT");
}

scenario::Trajectory SimulationClient::run_simulation_get_trace(const scenario::SimulationConfig& config,
                                                                std::uint8_t run_index) {
    conn_.send(StartSim{config, run_index});
    bool finished = false;
    for (;;) {
        auto msg = next();
        if (auto* hb = std::get_if<Heartbeat>(&msg)) {
            if (finished)
                throw ProtocolError(error_code::kUnexpectedMessage, "HEARTBEAT after the FINISHED heartbeat");
            ++stats_.heartbeats;
            finished = hb->status == SimStatus::FINISHED;
            stats_.finished_heartbeat = stats_.finished_heartbeat || finished;
            if (sync_ == scenario::SyncType::WITH_SYNC) {
                conn_.send(Continue{});
                ++stats_.continues;
            }
            continue;
        }
        if (auto* trace = std::get_if<TraceData>(&msg)) return std::move(trace->trajectory);
        throw ProtocolError(error_code::kUnexpectedMessage,
                            "unexpected " + std::string(tag_name(tag_of(msg))) + " during simulation");
    }
}

scenario::Trajectory client_session(const Endpoint& endpoint, const scenario::SimEnvironment& env,
                                    const scenario::SimulationConfig& config, const ClientOptions& options,
                                    SessionStats* stats, std::uint8_t run_index) {
    SimulationClient client(endpoint, options);
    auto publish = [&] {
        if (stats) *stats = client.stats();
    };
    try {
        client.connect();
        client.setup_sim_environment(env);
        auto trace = client.run_simulation_get_trace(config, run_index);
        publish();
        return trace;
    } catch (...) {
        publish();
        throw;
    }
}

}  // namespace avtest::protocol

#include "avtest/protocol/runners.hpp"
#include "avtest/sim/supervisor.hpp"

namespace avtest::protocol {

ScenarioRunner embedded_runner(sim::KernelOptions options) {
    return [options](const scenario::ScenarioDocument& doc) {
        return sim::execute_scenario(doc.environment, doc.config, 0, nullptr, options).trajectory;
    };
}

ScenarioRunner endpoint_runner(Endpoint endpoint, ClientOptions options) {
    return [endpoint = std::move(endpoint), options](const scenario::ScenarioDocument& doc) {
        return client_session(endpoint, doc.environment, doc.config, options);
    };
}

}  // namespace avtest::protocol
