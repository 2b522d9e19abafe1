#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace avtest {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input document (scenario, requirement, study, CSV, formula text).
class ParseError : public Error {
public:
    using Error::Error;
};

// Well-formed input that violates a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace avtest

namespace avtest {

// Scenario cannot be instantiated (unknown controller, malformed controller
// arguments). Surfaces on the wire as PROTOCOL_ERROR code 100.
class SetupError : public Error {
public:
    using Error::Error;
};

}  // namespace avtest

namespace avtest {

// Wire-level failure carrying a numeric code. Codes below 100 are framing
// errors; 100+ are session errors reported by the supervisor.
class ProtocolError : public Error {
public:
    ProtocolError(std::uint16_t code, const std::string& message) : Error(message), code_(code) {}
    std::uint16_t code() const { return code_; }

private:
    std::uint16_t code_;
};

namespace error_code {
inline constexpr std::uint16_t kMalformedFrame = 1;
inline constexpr std::uint16_t kUnknownTag = 2;
inline constexpr std::uint16_t kIncompleteFrame = 3;
inline constexpr std::uint16_t kOversizeFrame = 4;
inline constexpr std::uint16_t kSetupFailed = 100;
inline constexpr std::uint16_t kContinueTimeout = 101;
inline constexpr std::uint16_t kUnexpectedMessage = 102;
inline constexpr std::uint16_t kVersionMismatch = 103;
inline constexpr std::uint16_t kInvalidRun = 104;
inline constexpr std::uint16_t kConnectionLost = 105;
inline constexpr std::uint16_t kTimeout = 106;
}  // namespace error_code

}  // namespace avtest
