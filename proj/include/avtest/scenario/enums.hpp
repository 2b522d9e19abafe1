#pragma once

#include <optional>
#include <string_view>

#include "avtest/scenario/types.hpp"

namespace avtest::scenario {

std::string_view to_string(RoadType v);
std::string_view to_string(SensorLocation v);
std::string_view to_string(FogType v);
std::string_view to_string(DisturbanceType v);
std::string_view to_string(SyncType v);
std::string_view to_string(ItemType v);
std::string_view to_string(RunMode v);
std::string_view to_string(StateId v);

template <typename Enum>
std::optional<Enum> enum_from_string(std::string_view name);

}  // namespace avtest::scenario
