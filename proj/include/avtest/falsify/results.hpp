#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "avtest/falsify/search.hpp"

namespace avtest::falsify {

// Everything needed to interpret a set of runs without the study file.
struct FalsificationReport {
    std::string formula;
    SearchSpace space;
    FalsifyConfig config;
    std::vector<FalsificationResult> runs;
    bool operator==(const FalsificationReport&) const = default;
};

// Infinite robustness values are written as the strings "inf" / "-inf".
nlohmann::json to_json(const FalsificationReport& report);
nlohmann::json to_json(const SearchSpace& space);
nlohmann::json to_json(const FalsifyConfig& config);

// Throws ParseError on malformed or truncated input and on results whose
// summary fields disagree with their history.
FalsificationReport report_from_json(const nlohmann::json& j);
SearchSpace space_from_json(const nlohmann::json& j, const std::string& path);
FalsifyConfig config_from_json(const nlohmann::json& j, const std::string& path);

void save_results(const std::string& path, const FalsificationReport& report);
FalsificationReport load_results(const std::string& path);

}  // namespace avtest::falsify
