#include "avtest/robustness/predicate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "avtest/error.hpp"
#include "avtest/json_util.hpp"

namespace avtest::robustness {

double LinearPredicate::robustness(std::span<const double> x) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < A.size(); ++k) acc = acc + A[k] * x[k];
    return b - acc;
}

std::vector<LinearPredicate> bind_predicates(const std::vector<PredicateSpec>& specs,
                                             const std::vector<std::string>& state_columns) {
    std::vector<LinearPredicate> out;
    std::set<std::string> names;
    for (const auto& spec : specs) {
        if (spec.name.empty()) throw ValidationError("predicate with empty name");
        if (!names.insert(spec.name).second) throw ValidationError("duplicate predicate '" + spec.name + "'");
        if (!std::isfinite(spec.b)) throw ValidationError("predicate '" + spec.name + "': b is not finite");
        LinearPredicate p{spec.name, std::vector<double>(state_columns.size(), 0.0), spec.b};
        for (const auto& [column, coef] : spec.A) {
            auto it = std::find(state_columns.begin(), state_columns.end(), column);
            if (it == state_columns.end())
                throw ValidationError("predicate '" + spec.name + "': unknown state column '" + column + "'");
            if (!std::isfinite(coef))
                throw ValidationError("predicate '" + spec.name + "': coefficient for '" + column + "' is not finite");
            p.A[static_cast<std::size_t>(it - state_columns.begin())] = coef;
        }
        out.push_back(std::move(p));
    }
    return out;
}

nlohmann::json to_json(const Requirement& req) {
    nlohmann::json preds = nlohmann::json::array();
    for (const auto& p : req.predicates) preds.push_back({{"name", p.name}, {"A", p.A}, {"b", p.b}});
    return {{"predicates", preds}, {"formula", req.formula}};
}

Requirement requirement_from_json(const nlohmann::json& j) {
    using namespace json_io;
    Requirement req;
    JsonObject root(j, "");
    const json* preds = root.find("predicates");
    if (!preds || !preds->is_array()) fail("predicates", "expected an array");
    for (std::size_t i = 0; i < preds->size(); ++i) {
        const auto path = index_path("predicates", i);
        JsonObject o((*preds)[i], path);
        PredicateSpec p;
        o.required_field("name", p.name);
        o.required_field("b", p.b);
        const json* a = o.find("A");
        if (!a || !a->is_object()) fail(o.child("A"), "expected an object of column -> coefficient");
        for (auto it = a->begin(); it != a->end(); ++it) read_value(it.value(), o.child("A") + "." + it.key(), p.A[it.key()]);
        o.reject_unknown();
        req.predicates.push_back(std::move(p));
    }
    root.required_field("formula", req.formula);
    root.reject_unknown();
    return req;
}

Requirement load_requirement_file(const std::string& path) {
    return requirement_from_json(json_io::parse_text(json_io::read_file(path), path));
}

void save_requirement_file(const std::string& path, const Requirement& req) {
    json_io::write_file(path, to_json(req).dump(2) + "\n");
}

}  // namespace avtest::robustness
