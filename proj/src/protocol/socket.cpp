#include "avtest/protocol/socket.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

namespace avtest::protocol {

namespace {

std::string errno_text() { return std::strerror(errno); }

int remaining_ms(std::chrono::steady_clock::time_point deadline) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    return left.count() <= 0 ? 0 : static_cast<int>(std::min<long long>(left.count(), 1 << 30));
}

}  // namespace

Endpoint Endpoint::parse(const std::string& text) {
    Endpoint e;
    std::string port_text = text;
    if (const auto colon = text.rfind(':'); colon != std::string::npos) {
        e.host = text.substr(0, colon);
        port_text = text.substr(colon + 1);
    }
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), value);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || value > 65535 || e.host.empty())
        throw ParseError("invalid endpoint '" + text + "' (expected host:port)");
    e.port = static_cast<std::uint16_t>(value);
    return e;
}

std::string Endpoint::to_string() const { return host + ":" + std::to_string(port); }

Connection::Connection(Connection&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

Connection& Connection::operator=(Connection&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

Connection::~Connection() { close(); }

void Connection::close() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
}

Connection Connection::connect_to(const Endpoint& endpoint) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    const std::string port = std::to_string(endpoint.port);
    if (int rc = ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &res); rc != 0)
        throw ConnectError("cannot resolve " + endpoint.host + ": " + ::gai_strerror(rc));

    std::string last_error = "no address";
    for (auto* ai = res; ai; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
            ::freeaddrinfo(res);
            int one = 1;
            ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
            return Connection(fd);
        }
        last_error = errno_text();
        ::close(fd);
    }
    ::freeaddrinfo(res);
    throw ConnectError("connect to " + endpoint.to_string() + " failed: " + last_error);
}

void Connection::send(const WireMessage& msg) { send_raw(encode_message(msg)); }

void Connection::send_raw(const std::vector<std::uint8_t>& bytes) {
    if (fd_ < 0) throw ProtocolError(error_code::kConnectionLost, "connection closed");
    std::size_t sent = 0;
    while (sent < bytes.size()) {
        const auto n = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(error_code::kConnectionLost, "send failed: " + errno_text());
        }
        sent += static_cast<std::size_t>(n);
    }
}

bool Connection::read_exact(std::uint8_t* dst, std::size_t n, std::chrono::steady_clock::time_point deadline,
                            bool allow_clean_eof) {
    std::size_t got = 0;
    while (got < n) {
        pollfd pfd{fd_, POLLIN, 0};
        const int rc = ::poll(&pfd, 1, remaining_ms(deadline));
        if (rc < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(error_code::kConnectionLost, "poll failed: " + errno_text());
        }
        if (rc == 0) {
            if (got == 0 && allow_clean_eof) return false;
            throw ProtocolError(error_code::kTimeout, "timed out in the middle of a frame");
        }
        const auto r = ::recv(fd_, dst + got, n - got, 0);
        if (r < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(error_code::kConnectionLost, "recv failed: " + errno_text());
        }
        if (r == 0) {
            if (got == 0 && allow_clean_eof)
                throw ProtocolError(error_code::kConnectionLost, "connection closed by peer");
            throw ProtocolError(error_code::kIncompleteFrame, "incomplete frame: connection closed");
        }
        got += static_cast<std::size_t>(r);
    }
    return true;
}

std::optional<WireMessage> Connection::receive(std::chrono::milliseconds timeout) {
    if (fd_ < 0) throw ProtocolError(error_code::kConnectionLost, "connection closed");
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    std::vector<std::uint8_t> frame(kHeaderBytes);
    if (!read_exact(frame.data(), kHeaderBytes, deadline, true)) return std::nullopt;
    const auto len = frame_body_length(frame);
    frame.resize(kHeaderBytes + len);
    // The body of a started frame gets the full timeout again so large traces
    // are not cut off by a short message timeout.
    read_exact(frame.data() + kHeaderBytes, len, std::chrono::steady_clock::now() + timeout, false);
    return decode_message(frame);
}

Listener::Listener(const std::string& bind_address, std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw ConnectError("socket: " + errno_text());
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, bind_address.c_str(), &addr.sin_addr) != 1) {
        ::close(fd_);
        throw ConnectError("invalid bind address '" + bind_address + "'");
    }
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
        const std::string why = errno == EADDRINUSE ? "port in use" : errno_text();
        ::close(fd_);
        throw ConnectError("cannot bind " + bind_address + ":" + std::to_string(port) + ": " + why);
    }
    if (::listen(fd_, 16) != 0) {
        const std::string why = errno_text();
        ::close(fd_);
        throw ConnectError("listen: " + why);
    }
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

Listener::~Listener() { shutdown(); }

void Listener::shutdown() {
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
    }
    fd_ = -1;
}

std::optional<Connection> Listener::accept(std::chrono::milliseconds timeout) {
    if (fd_ < 0) return std::nullopt;
    pollfd pfd{fd_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
    if (rc <= 0 || fd_ < 0) return std::nullopt;
    const int client = ::accept(fd_, nullptr, nullptr);
    if (client < 0) return std::nullopt;
    int one = 1;
    ::setsockopt(client, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    return Connection(client);
}

}  // namespace avtest::protocol
