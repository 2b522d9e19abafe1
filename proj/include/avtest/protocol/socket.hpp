#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "avtest/error.hpp"
#include "avtest/protocol/message.hpp"

namespace avtest::protocol {

// Failure to establish or bind a TCP endpoint.
class ConnectError : public Error {
public:
    using Error::Error;
};

struct Endpoint {
    std::string host = "127.0.0.1";
    std::uint16_t port = 10021;

    // "host:port" or "port".
    static Endpoint parse(const std::string& text);
    std::string to_string() const;
};

// Owns a connected stream socket and moves whole frames over it.
class Connection {
public:
    Connection() = default;
    explicit Connection(int fd) : fd_(fd) {}
    Connection(Connection&& other) noexcept;
    Connection& operator=(Connection&& other) noexcept;
    Connection(const Connection&) = delete;
    Connection& operator=(const Connection&) = delete;
    ~Connection();

    // Single attempt; throws ConnectError on refusal.
    static Connection connect_to(const Endpoint& endpoint);

    bool is_open() const { return fd_ >= 0; }
    void close();

    void send(const WireMessage& msg);
    void send_raw(const std::vector<std::uint8_t>& bytes);

    // Waits up to `timeout` for a complete frame. Returns nullopt on timeout;
    // throws ProtocolError(kConnectionLost) when the peer closes mid-session
    // and the framing codes for invalid frames.
    std::optional<WireMessage> receive(std::chrono::milliseconds timeout);

private:
    bool read_exact(std::uint8_t* dst, std::size_t n, std::chrono::steady_clock::time_point deadline,
                    bool allow_clean_eof);

    int fd_ = -1;
};

class Listener {
public:
    // Port 0 picks an ephemeral port. Throws ConnectError if the port is taken.
    Listener(const std::string& bind_address, std::uint16_t port);
    Listener(const Listener&) = delete;
    Listener& operator=(const Listener&) = delete;
    ~Listener();

    std::uint16_t port() const { return port_; }
    // nullopt on timeout or after shutdown().
    std::optional<Connection> accept(std::chrono::milliseconds timeout);
    void shutdown();

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

}  // namespace avtest::protocol
