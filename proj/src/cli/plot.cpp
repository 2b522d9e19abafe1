#include "avtest/cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "avtest/error.hpp"
#include "avtest/scenario/trace_dict.hpp"
#include "avtest/sim/trace_csv.hpp"

namespace avtest::cli {

namespace {

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    // 5% of the span on each side; a flat range gets a unit-sized frame.
    double margin() const { return hi > lo ? 0.05 * (hi - lo) : 0.5; }
};

}  // namespace

ColumnPair parse_column_pair(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size() ||
        text.find(':', colon + 1) != std::string::npos)
        throw ValidationError("column pair '" + text + "' must look like x_column:y_column");
    return {text.substr(0, colon), text.substr(colon + 1)};
}

std::string render_svg(const scenario::Trajectory& trajectory, const std::vector<ColumnPair>& pairs) {
    if (trajectory.rows.empty()) throw ValidationError("trace has no samples to plot");
    if (pairs.empty()) throw ValidationError("no column pairs to plot");
    const auto dict = scenario::populate_trace_dict(trajectory.columns);
    auto column = [&](const std::string& name) {
        auto idx = dict.find_by_name(name);
        if (!idx) throw ValidationError("trace has no column '" + name + "'");
        return *idx;
    };

    std::vector<std::pair<std::size_t, std::size_t>> cols;
    Range xr, yr;
    for (const auto& [x, y] : pairs) {
        cols.emplace_back(column(x), column(y));
        for (const auto& row : trajectory.rows) {
            xr.add(row[cols.back().first]);
            yr.add(row[cols.back().second]);
        }
    }
    const double mx = xr.margin(), my = yr.margin();
    const double x0 = xr.lo - mx, width = (xr.hi - xr.lo) + 2 * mx;
    const double y0 = -(yr.hi + my), height = (yr.hi - yr.lo) + 2 * my;

    using sim::format_double;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" preserveAspectRatio=\"none\" "
        << "viewBox=\"" << format_double(x0) << " " << format_double(y0) << " " << format_double(width) << " "
        << format_double(height) << "\">\n";
    svg << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"2\">\n";
    for (std::size_t p = 0; p < cols.size(); ++p) {
        svg << "<polyline data-x=\"" << pairs[p].first << "\" data-y=\"" << pairs[p].second << "\" stroke=\""
            << kColors[p % std::size(kColors)] << "\" vector-effect=\"non-scaling-stroke\" points=\"";
        for (std::size_t r = 0; r < trajectory.rows.size(); ++r) {
            if (r) svg << " ";
            svg << format_double(trajectory.rows[r][cols[p].first]) << ","
                << format_double(trajectory.rows[r][cols[p].second]);
        }
        svg << "\"/>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace avtest::cli
