#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace avtest::robustness {

// Half-space predicate A·x <= b. Robustness is the signed margin b - A·x.
struct LinearPredicate {
    std::string name;
    std::vector<double> A;
    double b = 0.0;

    double robustness(std::span<const double> x) const;
    bool operator==(const LinearPredicate&) const = default;
};

// Predicate as stored on disk: coefficients keyed by state column name, so a
// requirement keeps working when the log layout changes.
struct PredicateSpec {
    std::string name;
    std::map<std::string, double> A;
    double b = 0.0;
    bool operator==(const PredicateSpec&) const = default;
};

struct Requirement {
    std::vector<PredicateSpec> predicates;
    std::string formula;
    bool operator==(const Requirement&) const = default;
};

// Resolves column names against `state_columns`; throws ValidationError on
// unknown columns, duplicate predicate names or non-finite coefficients.
std::vector<LinearPredicate> bind_predicates(const std::vector<PredicateSpec>& specs,
                                             const std::vector<std::string>& state_columns);

nlohmann::json to_json(const Requirement& req);
Requirement requirement_from_json(const nlohmann::json& j);
Requirement load_requirement_file(const std::string& path);
void save_requirement_file(const std::string& path, const Requirement& req);

}  // namespace avtest::robustness
