#pragma once

// Frame layout: 4-byte big-endian length (tag + payload), 1-byte tag,
// payload. Structured payloads are canonical scenario JSON; heartbeat
// scalars are fixed-width big-endian integers.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "avtest/scenario/types.hpp"

namespace avtest::protocol {

inline constexpr std::uint16_t kProtocolVersion = 1;
inline constexpr std::size_t kMaxFrameBytes = 64u * 1024u * 1024u;
inline constexpr std::size_t kHeaderBytes = 4;

// Tag values are part of the wire format and never change.
enum class Tag : std::uint8_t {
    HELLO = 0x01,
    ACK = 0x02,
    SETUP_ENVIRONMENT = 0x03,
    START_SIM = 0x04,
    HEARTBEAT = 0x05,
    CONTINUE = 0x06,
    TRACE_DATA = 0x07,
    PROTOCOL_ERROR = 0x08,
};

enum class SimStatus : std::uint8_t { RUNNING = 0, FINISHED = 1 };

struct Hello {
    std::uint16_t protocol_version = kProtocolVersion;
    bool operator==(const Hello&) const = default;
};
struct Ack {
    bool operator==(const Ack&) const = default;
};
struct SetupEnvironment {
    scenario::SimEnvironment env;
    bool operator==(const SetupEnvironment&) const = default;
};
struct StartSim {
    scenario::SimulationConfig config;
    std::uint8_t run_index = 0;
    bool operator==(const StartSim&) const = default;
};
struct Heartbeat {
    std::uint64_t sim_time_ms = 0;
    SimStatus status = SimStatus::RUNNING;
    bool operator==(const Heartbeat&) const = default;
};
struct Continue {
    bool operator==(const Continue&) const = default;
};
struct TraceData {
    scenario::Trajectory trajectory;
    bool operator==(const TraceData&) const = default;
};
struct ErrorReport {
    std::uint16_t code = 0;
    std::string message;
    bool operator==(const ErrorReport&) const = default;
};

using WireMessage = std::variant<Hello, Ack, SetupEnvironment, StartSim, Heartbeat, Continue, TraceData, ErrorReport>;

Tag tag_of(const WireMessage& msg);
std::string_view tag_name(Tag tag);

std::vector<std::uint8_t> encode_message(const WireMessage& msg);

// `frame` must hold exactly one complete frame. Throws ProtocolError with
// a framing code on unknown tags, truncation or oversize lengths.
WireMessage decode_message(std::span<const std::uint8_t> frame);

// Length of tag + payload announced by a 4-byte header; rejects zero and
// oversize lengths.
std::uint32_t frame_body_length(std::span<const std::uint8_t> header);

}  // namespace avtest::protocol
