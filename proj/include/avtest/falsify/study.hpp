#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "avtest/falsify/results.hpp"
#include "avtest/falsify/search.hpp"
#include "avtest/protocol/runners.hpp"
#include "avtest/robustness/predicate.hpp"

namespace avtest::falsify {

// Study file: scenario template and requirement paths (relative to the study
// file), the search box with scenario bindings, and search settings.
struct Study {
    std::string scenario;
    std::string requirement;
    SearchSpace space;
    FalsifyConfig config;
    std::optional<std::string> endpoint;  // "host:port"; embedded when absent
    bool operator==(const Study&) const = default;
};

nlohmann::json to_json(const Study& study);
Study study_from_json(const nlohmann::json& j);
Study load_study_file(const std::string& path);
void save_study_file(const std::string& path, const Study& study);

// Builds the scenario for a sample: binds every dimension, sets
// data_log_period_ms = round(1000 * samp_time_s) and
// sim_duration_ms = round(1000 * sim_duration_s).
scenario::ScenarioDocument instantiate_sample(const nlohmann::json& scenario_template, const SearchSpace& space,
                                              const FalsifyConfig& config, const std::vector<double>& sample);

System make_scenario_system(const scenario::ScenarioDocument& scenario_template, const SearchSpace& space,
                            const FalsifyConfig& config, protocol::ScenarioRunner runner);

// Study loaded and resolved against its files, ready to search.
struct PreparedStudy {
    Study study;
    scenario::ScenarioDocument scenario;
    robustness::Requirement requirement;
    robustness::FormulaPtr formula;
    std::vector<robustness::LinearPredicate> predicates;

    Objective objective(protocol::ScenarioRunner runner) const;
};

PreparedStudy prepare_study(const std::string& study_path);

// Runs config.runs annealing runs.
FalsificationReport run_study(const PreparedStudy& prepared, const protocol::ScenarioRunner& runner);

}  // namespace avtest::falsify
