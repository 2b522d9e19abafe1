#pragma once

#include <string>
#include <string_view>

#include "avtest/scenario/types.hpp"

namespace avtest::sim {

// Header row of column names, then one row per sample. Values use the
// shortest representation that parses back to the same double, so the
// output is byte-stable and lossless.
std::string write_trace_csv(const scenario::Trajectory& trajectory);
scenario::Trajectory read_trace_csv(std::string_view text);

std::string format_double(double v);

// Inverse of scenario::column_name(); throws ParseError on unknown names.
scenario::LogItemDescription parse_column_name(std::string_view name);

}  // namespace avtest::sim
