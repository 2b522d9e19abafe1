#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avtest/scenario/types.hpp"

namespace avtest::scenario {

// Identity of a logged quantity. TIME entries compare equal regardless of
// their index/state fields.
struct StateKey {
    ItemType item_type = ItemType::TIME;
    int item_index = 0;
    StateId state = StateId::POSITION_X;

    static StateKey of(const LogItemDescription& d);
    auto operator<=>(const StateKey&) const = default;
};

class StateIndexMap {
public:
    StateIndexMap() = default;

    std::optional<std::size_t> find(const StateKey& key) const;
    std::size_t at(const StateKey& key) const;
    std::size_t size() const { return columns_.size(); }
    const std::vector<LogItemDescription>& columns() const { return columns_; }

    // "time_ms", "vehicle0_position_x", "pedestrian0_position_y", ...
    std::vector<std::string> column_names() const;
    std::optional<std::size_t> find_by_name(const std::string& name) const;

private:
    friend StateIndexMap populate_trace_dict(const std::vector<LogItemDescription>& descriptions);
    std::map<StateKey, std::size_t> index_;
    std::vector<LogItemDescription> columns_;
};

// Column index of each description, in list order. Throws ValidationError
// when a description repeats.
StateIndexMap populate_trace_dict(const std::vector<LogItemDescription>& descriptions);
StateIndexMap populate_trace_dict(const SimEnvironment& env);

std::string column_name(const LogItemDescription& d);

}  // namespace avtest::scenario
