#include "avtest/falsify/results.hpp"

#include <cmath>

#include "avtest/error.hpp"
#include "avtest/json_util.hpp"

namespace avtest::falsify {

namespace {

constexpr std::string_view kFormat = "avtest-falsification-results";
constexpr int kFormatVersion = 1;

using json_io::json;
using json_io::JsonObject;

json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double read_number(const json& j, const std::string& path) {
    if (j.is_string()) {
        if (j == "inf") return std::numeric_limits<double>::infinity();
        if (j == "-inf") return -std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    json_io::read_value(j, path, v);
    return v;
}

std::vector<double> read_vector(const json& j, const std::string& path) {
    std::vector<double> v;
    json_io::read_value(j, path, v);
    return v;
}

json result_json(const FalsificationResult& r) {
    json history = json::array();
    for (const auto& e : r.history) history.push_back({{"sample", e.sample}, {"robustness", number(e.robustness)}});
    return {{"best_sample", r.best_sample},
            {"best_robustness", number(r.best_robustness)},
            {"falsified", r.falsified},
            {"n_simulations_used", r.n_simulations_used},
            {"seed", r.seed},
            {"history", history}};
}

FalsificationResult result_from_json(const json& j, const std::string& path) {
    JsonObject o(j, path);
    FalsificationResult r;
    const json* best = o.find("best_sample");
    if (!best) json_io::fail(o.child("best_sample"), "missing required field");
    r.best_sample = read_vector(*best, o.child("best_sample"));
    const json* best_r = o.find("best_robustness");
    if (!best_r) json_io::fail(o.child("best_robustness"), "missing required field");
    r.best_robustness = read_number(*best_r, o.child("best_robustness"));
    o.required_field("falsified", r.falsified);
    std::uint64_t used = 0;
    o.required_field("n_simulations_used", used);
    r.n_simulations_used = used;
    o.required_field("seed", r.seed);
    const json* history = o.find("history");
    if (!history || !history->is_array()) json_io::fail(o.child("history"), "expected an array");
    for (std::size_t i = 0; i < history->size(); ++i) {
        const auto hp = json_io::index_path(o.child("history"), i);
        JsonObject e((*history)[i], hp);
        Evaluation ev;
        const json* s = e.find("sample");
        const json* rb = e.find("robustness");
        if (!s || !rb) json_io::fail(hp, "history entry needs sample and robustness");
        ev.sample = read_vector(*s, e.child("sample"));
        ev.robustness = read_number(*rb, e.child("robustness"));
        e.reject_unknown();
        r.history.push_back(std::move(ev));
    }
    o.reject_unknown();

    // Integrity: summary fields must follow from the history.
    if (r.n_simulations_used != r.history.size())
        json_io::fail(path, "integrity error: n_simulations_used does not match history length");
    double best_seen = std::numeric_limits<double>::infinity();
    for (const auto& e : r.history) best_seen = std::min(best_seen, e.robustness);
    if (!r.history.empty() && best_seen != r.best_robustness)
        json_io::fail(path, "integrity error: best_robustness is not the history minimum");
    if (r.falsified != (r.best_robustness < 0.0)) json_io::fail(path, "integrity error: falsified flag disagrees");
    return r;
}

}  // namespace

json to_json(const SearchSpace& space) {
    json dims = json::array();
    for (const auto& d : space.dims)
        dims.push_back({{"name", d.name}, {"lo", d.lo}, {"hi", d.hi}, {"binding", d.binding}});
    return dims;
}

json to_json(const FalsifyConfig& c) {
    return {{"n_tests", c.n_tests},
            {"runs", c.runs},
            {"seed", c.seed},
            {"falsification_mode", c.falsification_mode},
            {"sim_duration_s", c.sim_duration_s},
            {"samp_time_s", c.samp_time_s},
            {"init_temperature", c.init_temperature},
            {"cooling", c.cooling},
            {"proposal_scale", c.proposal_scale}};
}

SearchSpace space_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) json_io::fail(path, "expected an array of dimensions");
    SearchSpace space;
    for (std::size_t i = 0; i < j.size(); ++i) {
        JsonObject o(j[i], json_io::index_path(path, i));
        Dimension d;
        o.required_field("name", d.name);
        o.required_field("lo", d.lo);
        o.required_field("hi", d.hi);
        o.optional_field("binding", d.binding);
        o.reject_unknown();
        space.dims.push_back(std::move(d));
    }
    try {
        space.validate();
    } catch (const ValidationError& e) {
        json_io::fail(path, e.what());
    }
    return space;
}

FalsifyConfig config_from_json(const json& j, const std::string& path) {
    JsonObject o(j, path);
    FalsifyConfig c;
    std::uint64_t n_tests = c.n_tests, runs = c.runs;
    o.optional_field("n_tests", n_tests);
    o.optional_field("runs", runs);
    c.n_tests = n_tests;
    c.runs = runs;
    o.optional_field("seed", c.seed);
    o.optional_field("falsification_mode", c.falsification_mode);
    o.optional_field("sim_duration_s", c.sim_duration_s);
    o.optional_field("samp_time_s", c.samp_time_s);
    o.optional_field("init_temperature", c.init_temperature);
    o.optional_field("cooling", c.cooling);
    o.optional_field("proposal_scale", c.proposal_scale);
    o.reject_unknown();
    try {
        c.validate();
    } catch (const ValidationError& e) {
        json_io::fail(path, e.what());
    }
    return c;
}

json to_json(const FalsificationReport& report) {
    json runs = json::array();
    for (const auto& r : report.runs) runs.push_back(result_json(r));
    return {{"format", kFormat},      {"version", kFormatVersion},          {"formula", report.formula},
            {"space", to_json(report.space)}, {"config", to_json(report.config)}, {"runs", runs}};
}

FalsificationReport report_from_json(const json& j) {
    JsonObject o(j, "");
    std::string format;
    int version = 0;
    o.required_field("format", format);
    o.required_field("version", version);
    if (format != kFormat || version != kFormatVersion)
        json_io::fail("format", "not a falsification results file (version " + std::to_string(kFormatVersion) + ")");
    FalsificationReport report;
    o.required_field("formula", report.formula);
    const json* space = o.find("space");
    const json* config = o.find("config");
    const json* runs = o.find("runs");
    if (!space || !config || !runs || !runs->is_array()) json_io::fail("", "results need space, config and runs");
    report.space = space_from_json(*space, "space");
    report.config = config_from_json(*config, "config");
    for (std::size_t i = 0; i < runs->size(); ++i)
        report.runs.push_back(result_from_json((*runs)[i], json_io::index_path("runs", i)));
    o.reject_unknown();
    return report;
}

void save_results(const std::string& path, const FalsificationReport& report) {
    json_io::write_file(path, to_json(report).dump(2) + "\n");
}

FalsificationReport load_results(const std::string& path) {
    return report_from_json(json_io::parse_text(json_io::read_file(path), path));
}

}  // namespace avtest::falsify
