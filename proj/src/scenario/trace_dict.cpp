#include "avtest/scenario/trace_dict.hpp"

#include <algorithm>
#include <cctype>

#include "avtest/error.hpp"
#include "avtest/scenario/enums.hpp"

namespace avtest::scenario {

StateKey StateKey::of(const LogItemDescription& d) {
    if (d.item_type == ItemType::TIME) return StateKey{};
    return StateKey{d.item_type, d.item_index, d.item_state_index};
}

std::string column_name(const LogItemDescription& d) {
    if (d.item_type == ItemType::TIME) return "time_ms";
    std::string name = d.item_type == ItemType::VEHICLE ? "vehicle" : "pedestrian";
    name += std::to_string(d.item_index);
    name += '_';
    for (char c : to_string(d.item_state_index)) name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return name;
}

std::optional<std::size_t> StateIndexMap::find(const StateKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t StateIndexMap::at(const StateKey& key) const {
    if (auto col = find(key)) return *col;
    throw Error("state is not part of the data log");
}

std::vector<std::string> StateIndexMap::column_names() const {
    std::vector<std::string> names;
    names.reserve(columns_.size());
    for (const auto& c : columns_) names.push_back(column_name(c));
    return names;
}

std::optional<std::size_t> StateIndexMap::find_by_name(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (column_name(columns_[i]) == name) return i;
    return std::nullopt;
}

StateIndexMap populate_trace_dict(const std::vector<LogItemDescription>& descriptions) {
    StateIndexMap map;
    for (std::size_t i = 0; i < descriptions.size(); ++i) {
        const auto key = StateKey::of(descriptions[i]);
        if (!map.index_.emplace(key, i).second)
            throw ValidationError("duplicate data log description '" + column_name(descriptions[i]) +
                                  "' at position " + std::to_string(i));
        map.columns_.push_back(descriptions[i]);
    }
    return map;
}

StateIndexMap populate_trace_dict(const SimEnvironment& env) {
    return populate_trace_dict(env.data_log_description_list);
}

}  // namespace avtest::scenario
