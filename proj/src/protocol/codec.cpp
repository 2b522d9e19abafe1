#include <nlohmann/json.hpp>

#include "avtest/error.hpp"
#include "avtest/json_util.hpp"
#include "avtest/protocol/message.hpp"
#include "avtest/scenario/document.hpp"

namespace avtest::protocol {

namespace {

template <typename... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_bytes(std::vector<std::uint8_t>& out, std::string_view s) { out.insert(out.end(), s.begin(), s.end()); }

std::uint64_t get_be(std::span<const std::uint8_t> bytes) {
    std::uint64_t v = 0;
    for (auto b : bytes) v = (v << 8) | b;
    return v;
}

[[noreturn]] void malformed(const std::string& what) {
    throw ProtocolError(error_code::kMalformedFrame, "malformed frame: " + what);
}

std::string_view as_text(std::span<const std::uint8_t> bytes) {
    return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

template <typename F>
auto decode_json(std::span<const std::uint8_t> payload, F&& convert) {
    try {
        return convert(json_io::parse_text(as_text(payload), "payload"));
    } catch (const ParseError& e) {
        malformed(e.what());
    }
}

}  // namespace

Tag tag_of(const WireMessage& msg) {
    static constexpr Tag tags[] = {Tag::HELLO,     Tag::ACK,      Tag::SETUP_ENVIRONMENT, Tag::START_SIM,
                                   Tag::HEARTBEAT, Tag::CONTINUE, Tag::TRACE_DATA,        Tag::PROTOCOL_ERROR};
    return tags[msg.index()];
}

std::string_view tag_name(Tag tag) {
    switch (tag) {
        case Tag::HELLO: return "HELLO";
        case Tag::ACK: return "ACK";
        case Tag::SETUP_ENVIRONMENT: return "SETUP_ENVIRONMENT";
        case Tag::START_SIM: return "START_SIM";
        case Tag::HEARTBEAT: return "HEARTBEAT";
        case Tag::CONTINUE: return "CONTINUE";
        case Tag::TRACE_DATA: return "TRACE_DATA";
        case Tag::PROTOCOL_ERROR: return "PROTOCOL_ERROR";
    }
    return "UNKNOWN";
}

std::vector<std::uint8_t> encode_message(const WireMessage& msg) {
    std::vector<std::uint8_t> payload;
    std::visit(overloaded{
                   [&](const Hello& m) { put_u16(payload, m.protocol_version); },
                   [](const Ack&) {},
                   [&](const SetupEnvironment& m) { put_bytes(payload, scenario::to_json(m.env).dump()); },
                   [&](const StartSim& m) {
                       payload.push_back(m.run_index);
                       put_bytes(payload, scenario::to_json(m.config).dump());
                   },
                   [&](const Heartbeat& m) {
                       put_u64(payload, m.sim_time_ms);
                       payload.push_back(static_cast<std::uint8_t>(m.status));
                   },
                   [](const Continue&) {},
                   [&](const TraceData& m) { put_bytes(payload, scenario::to_json(m.trajectory).dump()); },
                   [&](const ErrorReport& m) {
                       put_u16(payload, m.code);
                       put_bytes(payload, m.message);
                   },
               },
               msg);

    const std::size_t body = payload.size() + 1;
    if (body > kMaxFrameBytes) throw ProtocolError(error_code::kOversizeFrame, "frame exceeds 64 MiB");
    std::vector<std::uint8_t> frame;
    frame.reserve(kHeaderBytes + body);
    put_u32(frame, static_cast<std::uint32_t>(body));
    frame.push_back(static_cast<std::uint8_t>(tag_of(msg)));
    frame.insert(frame.end(), payload.begin(), payload.end());
    return frame;
}

std::uint32_t frame_body_length(std::span<const std::uint8_t> header) {
    if (header.size() < kHeaderBytes) throw ProtocolError(error_code::kIncompleteFrame, "incomplete frame");
    const auto len = static_cast<std::uint32_t>(get_be(header.first(kHeaderBytes)));
    if (len == 0) malformed("zero-length frame");
    if (len > kMaxFrameBytes)
        throw ProtocolError(error_code::kOversizeFrame, "frame of " + std::to_string(len) + " bytes exceeds 64 MiB");
    return len;
}

WireMessage decode_message(std::span<const std::uint8_t> frame) {
    const std::uint32_t len = frame_body_length(frame);
    if (frame.size() < kHeaderBytes + len) throw ProtocolError(error_code::kIncompleteFrame, "incomplete frame");
    if (frame.size() > kHeaderBytes + len) malformed("trailing bytes after frame");

    const auto tag = frame[kHeaderBytes];
    const auto payload = frame.subspan(kHeaderBytes + 1);
    auto expect_size = [&](std::size_t n) {
        if (payload.size() != n)
            malformed(std::string(tag_name(static_cast<Tag>(tag))) + " payload must be " + std::to_string(n) +
                      " bytes");
    };

    switch (static_cast<Tag>(tag)) {
        case Tag::HELLO:
            expect_size(2);
            return Hello{static_cast<std::uint16_t>(get_be(payload))};
        case Tag::ACK:
            expect_size(0);
            return Ack{};
        case Tag::SETUP_ENVIRONMENT:
            return decode_json(payload, [](const nlohmann::json& j) {
                return WireMessage{SetupEnvironment{scenario::environment_from_json(j)}};
            });
        case Tag::START_SIM: {
            if (payload.empty()) malformed("START_SIM payload is empty");
            const auto run_index = payload[0];
            return decode_json(payload.subspan(1), [&](const nlohmann::json& j) {
                return WireMessage{StartSim{scenario::config_from_json(j), run_index}};
            });
        }
        case Tag::HEARTBEAT: {
            expect_size(9);
            const auto status = payload[8];
            if (status > 1) malformed("unknown heartbeat status");
            return Heartbeat{get_be(payload.first(8)), static_cast<SimStatus>(status)};
        }
        case Tag::CONTINUE:
            expect_size(0);
            return Continue{};
        case Tag::TRACE_DATA:
            return decode_json(payload, [](const nlohmann::json& j) {
                return WireMessage{TraceData{scenario::trajectory_from_json(j)}};
            });
        case Tag::PROTOCOL_ERROR: {
            if (payload.size() < 2) malformed("PROTOCOL_ERROR payload too short");
            return ErrorReport{static_cast<std::uint16_t>(get_be(payload.first(2))),
                               std::string(as_text(payload.subspan(2)))};
        }
    }
    throw ProtocolError(error_code::kUnknownTag, "unknown message tag " + std::to_string(tag));
}

}  // namespace avtest::protocol
