#include "avtest/ca/suite.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <thread>

#include "avtest/error.hpp"
#include "avtest/json_util.hpp"

namespace avtest::ca {

namespace {

nlohmann::json::json_pointer pointer(const std::string& text) {
    try {
        return nlohmann::json::json_pointer(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("invalid JSON pointer '" + text + "': " + e.what());
    }
}

const nlohmann::json* lookup(const nlohmann::json& doc, const std::string& text) {
    const auto ptr = pointer(text);
    return doc.contains(ptr) ? &doc.at(ptr) : nullptr;
}

double parse_cell(const std::string& name, const std::string& cell) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v))
        throw ValidationError("value '" + cell + "' of '" + name + "' is not a number");
    return v;
}

}  // namespace

Bindings bindings_from_json(const nlohmann::json& j) {
    if (!j.is_object()) json_io::fail("", "expected an object of parameter -> JSON pointer");
    Bindings out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_string()) json_io::fail(it.key(), "expected a JSON pointer string");
        out[it.key()] = it.value().get<std::string>();
    }
    return out;
}

Bindings load_bindings_file(const std::string& path) {
    return bindings_from_json(json_io::parse_text(json_io::read_file(path), path));
}

void check_bindings(const TestTable& table, const nlohmann::json& scenario_template, const Bindings& bindings) {
    for (const auto& [name, ptr] : bindings) {
        if (std::find(table.parameter_names.begin(), table.parameter_names.end(), name) == table.parameter_names.end())
            throw ValidationError("bound parameter '" + name + "' is not a table column");
        const auto* field = lookup(scenario_template, ptr);
        if (!field) throw ValidationError("binding '" + name + "': template has no field " + ptr);
        if (!field->is_number()) throw ValidationError("binding '" + name + "': " + ptr + " is not a numeric field");
    }
}

void set_numeric(nlohmann::json& doc, const std::string& text, double value) {
    const auto ptr = pointer(text);
    if (!doc.contains(ptr)) throw ValidationError("document has no field " + text);
    auto& field = doc.at(ptr);
    if (field.is_number_integer()) {
        if (value != std::trunc(value)) throw ValidationError(text + " takes an integer, got " + std::to_string(value));
        field = static_cast<std::int64_t>(value);
    } else {
        field = value;
    }
}

scenario::ScenarioDocument instantiate(const nlohmann::json& scenario_template, const TestCase& test_case,
                                       const Bindings& bindings) {
    nlohmann::json doc = scenario_template;
    for (const auto& [name, ptr] : bindings) {
        const auto& cell = get_field_value(test_case, name);
        if (cell == kDontCare) continue;
        set_numeric(doc, ptr, parse_cell(name, cell));
    }
    try {
        return scenario::scenario_from_json(doc);
    } catch (const ParseError& e) {
        throw ValidationError(std::string("instantiated scenario is invalid: ") + e.what());
    }
}

SuiteResult run_test_suite(const TestTable& table, const scenario::ScenarioDocument& scenario_template,
                           const Bindings& bindings, const Runner& runner, std::size_t jobs) {
    const auto template_json = scenario::to_json(scenario_template);
    check_bindings(table, template_json, bindings);

    SuiteResult result;
    std::mutex mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t row; (row = next++) < table.size();) {
            try {
                auto trajectory = runner(instantiate(template_json, get_experiment_all_fields(table, row), bindings));
                std::lock_guard lock(mutex);
                result.trajectories.emplace(row, std::move(trajectory));
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex);
                result.failures.push_back({row, e.what()});
            }
        }
    };

    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, table.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(result.failures.begin(), result.failures.end(),
              [](const RowFailure& a, const RowFailure& b) { return a.row < b.row; });
    return result;
}

}  // namespace avtest::ca
