#pragma once

// Strict JSON reading helpers: every read carries a field path for error
// messages, and objects reject keys that were never consumed.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "avtest/error.hpp"

namespace avtest::json_io {

using json = nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, std::string_view what) {
    throw ParseError((path.empty() ? std::string("<root>") : path) + ": " + std::string(what));
}

inline std::string index_path(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

inline void read_value(const json& j, const std::string& path, double& out) {
    if (!j.is_number()) fail(path, "expected a number");
    out = j.get<double>();
}

inline void read_value(const json& j, const std::string& path, std::int64_t& out) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    out = j.get<std::int64_t>();
}

inline void read_value(const json& j, const std::string& path, std::uint64_t& out) {
    if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
    out = j.get<std::uint64_t>();
}

inline void read_value(const json& j, const std::string& path, int& out) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    const auto v = j.get<std::int64_t>();
    if (v < INT32_MIN || v > INT32_MAX) fail(path, "integer out of range");
    out = static_cast<int>(v);
}

inline void read_value(const json& j, const std::string& path, bool& out) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    out = j.get<bool>();
}

inline void read_value(const json& j, const std::string& path, std::string& out) {
    if (!j.is_string()) fail(path, "expected a string");
    out = j.get<std::string>();
}

inline void read_value(const json& j, const std::string& path, std::pair<std::string, std::string>& out) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        fail(path, "expected a [name, value] pair of strings");
    out = {j[0].get<std::string>(), j[1].get<std::string>()};
}

template <std::size_t N>
void read_value(const json& j, const std::string& path, std::array<double, N>& out) {
    if (!j.is_array() || j.size() != N) fail(path, "expected an array of " + std::to_string(N) + " numbers");
    for (std::size_t i = 0; i < N; ++i) read_value(j[i], index_path(path, i), out[i]);
}

template <typename T>
void read_value(const json& j, const std::string& path, std::vector<T>& out) {
    if (!j.is_array()) fail(path, "expected an array");
    out.clear();
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        T item{};
        read_value(j[i], index_path(path, i), item);
        out.push_back(std::move(item));
    }
}

template <typename T>
void read_value(const json& j, const std::string& path, std::optional<T>& out) {
    if (j.is_null()) {
        out.reset();
        return;
    }
    T value{};
    read_value(j, path, value);
    out = std::move(value);
}

class JsonObject {
public:
    JsonObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_, "expected an object");
    }

    const std::string& path() const { return path_; }
    std::string child(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    bool has(std::string_view key) const { return j_.contains(key); }

    const json* find(std::string_view key) {
        auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        seen_.insert(std::string(key));
        return &*it;
    }

    // Missing keys leave `out` at its default value.
    template <typename T>
    void optional_field(std::string_view key, T& out) {
        if (const json* v = find(key)) read_value(*v, child(key), out);
    }

    template <typename T>
    void required_field(std::string_view key, T& out) {
        const json* v = find(key);
        if (!v) fail(child(key), "missing required field");
        read_value(*v, child(key), out);
    }

    void reject_unknown() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.contains(it.key())) fail(child(it.key()), "unknown field");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

// Parses text, converting nlohmann's byte offset into a line number.
json parse_text(std::string_view text, std::string_view what);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace avtest::json_io
