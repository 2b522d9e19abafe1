#pragma once

#include <string>
#include <utility>
#include <vector>

#include "avtest/scenario/types.hpp"

namespace avtest::cli {

using ColumnPair = std::pair<std::string, std::string>;

// "x:y" -> {"x", "y"}; throws ValidationError otherwise.
ColumnPair parse_column_pair(const std::string& text);

// One polyline per column pair, in data coordinates (y up). The viewBox
// spans the data extents plus a 5% margin on each side. Throws
// ValidationError on an empty trajectory or unknown column names.
std::string render_svg(const scenario::Trajectory& trajectory, const std::vector<ColumnPair>& pairs);

}  // namespace avtest::cli
