#include "avtest/falsify/study.hpp"

#include <cmath>
#include <filesystem>

#include "avtest/ca/suite.hpp"
#include "avtest/error.hpp"
#include "avtest/json_util.hpp"
#include "avtest/scenario/trace_dict.hpp"

namespace avtest::falsify {

using json_io::json;

json to_json(const Study& study) {
    json j = {{"scenario", study.scenario},
              {"requirement", study.requirement},
              {"space", to_json(study.space)},
              {"config", to_json(study.config)}};
    if (study.endpoint) j["endpoint"] = *study.endpoint;
    return j;
}

Study study_from_json(const json& j) {
    json_io::JsonObject o(j, "");
    Study s;
    o.required_field("scenario", s.scenario);
    o.required_field("requirement", s.requirement);
    const json* space = o.find("space");
    if (!space) json_io::fail("space", "missing required field");
    s.space = space_from_json(*space, "space");
    if (const json* config = o.find("config")) s.config = config_from_json(*config, "config");
    o.optional_field("endpoint", s.endpoint);
    o.reject_unknown();
    return s;
}

Study load_study_file(const std::string& path) {
    return study_from_json(json_io::parse_text(json_io::read_file(path), path));
}

void save_study_file(const std::string& path, const Study& study) {
    json_io::write_file(path, to_json(study).dump(2) + "\n");
}

scenario::ScenarioDocument instantiate_sample(const json& scenario_template, const SearchSpace& space,
                                              const FalsifyConfig& config, const std::vector<double>& sample) {
    if (sample.size() != space.dims.size()) throw ValidationError("sample dimension mismatch");
    json doc = scenario_template;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (space.dims[i].binding.empty())
            throw ValidationError("dimension '" + space.dims[i].name + "' has no scenario binding");
        ca::set_numeric(doc, space.dims[i].binding, sample[i]);
    }
    doc["environment"]["data_log_period_ms"] = static_cast<std::int64_t>(std::llround(1000.0 * config.samp_time_s));
    doc["config"]["sim_duration_ms"] = static_cast<std::int64_t>(std::llround(1000.0 * config.sim_duration_s));
    try {
        return scenario::scenario_from_json(doc);
    } catch (const ParseError& e) {
        throw ValidationError(std::string("sampled scenario is invalid: ") + e.what());
    }
}

System make_scenario_system(const scenario::ScenarioDocument& scenario_template, const SearchSpace& space,
                            const FalsifyConfig& config, protocol::ScenarioRunner runner) {
    return [tmpl = scenario::to_json(scenario_template), space, config,
            runner = std::move(runner)](const std::vector<double>& x) {
        return robustness::convert_trajectory(runner(instantiate_sample(tmpl, space, config, x)));
    };
}

Objective PreparedStudy::objective(protocol::ScenarioRunner runner) const {
    return make_objective(make_scenario_system(scenario, study.space, study.config, std::move(runner)), formula,
                          predicates);
}

PreparedStudy prepare_study(const std::string& study_path) {
    PreparedStudy p;
    p.study = load_study_file(study_path);
    const auto base = std::filesystem::path(study_path).parent_path();
    auto resolve = [&](const std::string& rel) {
        const std::filesystem::path path(rel);
        return (path.is_absolute() ? path : base / path).string();
    };
    p.scenario = scenario::load_scenario_file(resolve(p.study.scenario));
    p.requirement = robustness::load_requirement_file(resolve(p.study.requirement));
    p.formula = robustness::parse_formula(p.requirement.formula);

    const auto& cols = p.scenario.environment.data_log_description_list;
    if (cols.empty() || cols.front().item_type != scenario::ItemType::TIME)
        throw ValidationError("study scenario must log TIME as its first column");
    std::vector<std::string> state_columns;
    for (std::size_t c = 1; c < cols.size(); ++c) state_columns.push_back(scenario::column_name(cols[c]));
    p.predicates = robustness::bind_predicates(p.requirement.predicates, state_columns);

    // Fail fast on bindings that do not resolve.
    const auto tmpl = scenario::to_json(p.scenario);
    for (const auto& d : p.study.space.dims) {
        bool numeric = false;
        try {
            const auto ptr = json::json_pointer(d.binding);
            numeric = tmpl.contains(ptr) && tmpl.at(ptr).is_number();
        } catch (const json::exception&) {
        }
        if (!numeric)
            throw ValidationError("dimension '" + d.name + "': " + d.binding + " is not a numeric scenario field");
    }
    return p;
}

FalsificationReport run_study(const PreparedStudy& prepared, const protocol::ScenarioRunner& runner) {
    FalsificationReport report;
    report.formula = prepared.requirement.formula;
    report.space = prepared.study.space;
    report.config = prepared.study.config;
    report.runs = falsify_runs(prepared.objective(runner), prepared.study.space, prepared.study.config);
    return report;
}

}  // namespace avtest::falsify
