#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "avtest/ca/test_table.hpp"
#include "avtest/scenario/document.hpp"

namespace avtest::ca {

// Test parameter name -> JSON pointer into the scenario document, e.g.
// "/environment/pedestrians_list/0/target_speed".
using Bindings = std::map<std::string, std::string>;

Bindings bindings_from_json(const nlohmann::json& j);
Bindings load_bindings_file(const std::string& path);

// Every bound parameter must be a table column and every pointer must name a
// numeric field of the template. Throws ValidationError otherwise.
void check_bindings(const TestTable& table, const nlohmann::json& scenario_template, const Bindings& bindings);

// Writes the row's cells (parsed as numbers) into a copy of the template.
// Don't-care cells keep the template value. Throws ValidationError for a
// non-numeric cell.
scenario::ScenarioDocument instantiate(const nlohmann::json& scenario_template, const TestCase& test_case,
                                       const Bindings& bindings);

// Sets a numeric field, keeping integer fields integral.
void set_numeric(nlohmann::json& doc, const std::string& pointer, double value);

using Runner = std::function<scenario::Trajectory(const scenario::ScenarioDocument&)>;

struct RowFailure {
    std::size_t row = 0;
    std::string message;
};

struct SuiteResult {
    std::map<std::size_t, scenario::Trajectory> trajectories;
    std::vector<RowFailure> failures;  // sorted by row
};

// Runs every row; a failing row is recorded and the suite continues. With
// jobs > 1 rows run concurrently, so the runner must be thread-safe.
SuiteResult run_test_suite(const TestTable& table, const scenario::ScenarioDocument& scenario_template,
                           const Bindings& bindings, const Runner& runner, std::size_t jobs = 1);

}  // namespace avtest::ca
