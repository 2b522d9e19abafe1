#include "avtest/sim/trace_csv.hpp"

#include <charconv>
#include <cctype>
#include <sstream>

#include "avtest/error.hpp"
#include "avtest/scenario/enums.hpp"
#include "avtest/scenario/trace_dict.hpp"

namespace avtest::sim {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw Error("failed to format number");
    return std::string(buf, ptr);
}

scenario::LogItemDescription parse_column_name(std::string_view name) {
    using scenario::ItemType;
    if (name == "time_ms") return {ItemType::TIME, 0, scenario::StateId::POSITION_X};

    scenario::LogItemDescription d;
    std::string_view rest;
    if (name.starts_with("vehicle")) {
        d.item_type = ItemType::VEHICLE;
        rest = name.substr(7);
    } else if (name.starts_with("pedestrian")) {
        d.item_type = ItemType::PEDESTRIAN;
        rest = name.substr(10);
    } else {
        throw ParseError("unknown trace column '" + std::string(name) + "'");
    }
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d.item_index);
    if (ec != std::errc{} || ptr == rest.data() || ptr == rest.data() + rest.size() || *ptr != '_')
        throw ParseError("malformed trace column '" + std::string(name) + "'");
    std::string state(ptr + 1, rest.data() + rest.size());
    for (char& c : state) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    auto id = scenario::enum_from_string<scenario::StateId>(state);
    if (!id) throw ParseError("unknown state in trace column '" + std::string(name) + "'");
    d.item_state_index = *id;
    return d;
}

std::string write_trace_csv(const scenario::Trajectory& trajectory) {
    std::string out;
    for (std::size_t c = 0; c < trajectory.columns.size(); ++c) {
        if (c) out += ',';
        out += scenario::column_name(trajectory.columns[c]);
    }
    out += '\n';
    for (const auto& row : trajectory.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        cells.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

scenario::Trajectory read_trace_csv(std::string_view text) {
    scenario::Trajectory t;
    std::size_t line_no = 0;
    bool header = true;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto cells = split(line);
        if (header) {
            for (auto cell : cells) t.columns.push_back(parse_column_name(cell));
            header = false;
            continue;
        }
        if (cells.size() != t.columns.size())
            throw ParseError("trace csv line " + std::to_string(line_no) + ": expected " +
                             std::to_string(t.columns.size()) + " values");
        std::vector<double> row;
        row.reserve(cells.size());
        for (auto cell : cells) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw ParseError("trace csv line " + std::to_string(line_no) + ": bad number '" + std::string(cell) +
                                 "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (header) throw ParseError("trace csv: missing header row");
    return t;
}

}  // namespace avtest::sim
