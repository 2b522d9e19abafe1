#pragma once

#include <string>
#include <vector>

#include "avtest/scenario/types.hpp"

namespace avtest::scenario {

struct Violation {
    std::string path;  // e.g. "ego_vehicles_list[1].vhc_id"
    std::string message;

    bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

// Collects every invariant violation. An empty report means the environment
// can be loaded by the simulation kernel.
ValidationReport validate_environment(const SimEnvironment& env);

std::string format_report(const ValidationReport& report);

}  // namespace avtest::scenario
