#include "avtest/scenario/enums.hpp"

#include <array>
#include <string_view>

namespace avtest::scenario {
namespace {

template <typename Enum>
struct Names;

template <>
struct Names<RoadType> {
    static constexpr std::array<std::string_view, 1> values{"StraightRoadSegment"};
};
template <>
struct Names<SensorLocation> {
    static constexpr std::array<std::string_view, 5> values{"FRONT", "CENTER", "LEFT", "RIGHT", "TOP"};
};
template <>
struct Names<FogType> {
    static constexpr std::array<std::string_view, 1> values{"LINEAR"};
};
template <>
struct Names<DisturbanceType> {
    static constexpr std::array<std::string_view, 4> values{"INTERLEAVED", "FULL_LANE_LENGTH", "ONLY_LEFT",
                                                            "ONLY_RIGHT"};
};
template <>
struct Names<SyncType> {
    static constexpr std::array<std::string_view, 3> values{"NO_HEART_BEAT", "WITHOUT_SYNC", "WITH_SYNC"};
};
template <>
struct Names<ItemType> {
    static constexpr std::array<std::string_view, 3> values{"TIME", "VEHICLE", "PEDESTRIAN"};
};
template <>
struct Names<RunMode> {
    static constexpr std::array<std::string_view, 3> values{"REAL_TIME", "FAST_RUN", "FAST_NO_GRAPHICS"};
};
template <>
struct Names<StateId> {
    static constexpr std::array<std::string_view, 6> values{"POSITION_X", "POSITION_Y", "ORIENTATION",
                                                            "SPEED",      "VELOCITY_X", "VELOCITY_Y"};
};

template <typename Enum>
std::string_view name_of(Enum v) {
    return Names<Enum>::values.at(static_cast<std::size_t>(v));
}

}  // namespace

std::string_view to_string(RoadType v) { return name_of(v); }
std::string_view to_string(SensorLocation v) { return name_of(v); }
std::string_view to_string(FogType v) { return name_of(v); }
std::string_view to_string(DisturbanceType v) { return name_of(v); }
std::string_view to_string(SyncType v) { return name_of(v); }
std::string_view to_string(ItemType v) { return name_of(v); }
std::string_view to_string(RunMode v) { return name_of(v); }
std::string_view to_string(StateId v) { return name_of(v); }

template <typename Enum>
std::optional<Enum> enum_from_string(std::string_view name) {
    const auto& names = Names<Enum>::values;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<Enum>(i);
    return std::nullopt;
}

template std::optional<RoadType> enum_from_string<RoadType>(std::string_view);
template std::optional<SensorLocation> enum_from_string<SensorLocation>(std::string_view);
template std::optional<FogType> enum_from_string<FogType>(std::string_view);
template std::optional<DisturbanceType> enum_from_string<DisturbanceType>(std::string_view);
template std::optional<SyncType> enum_from_string<SyncType>(std::string_view);
template std::optional<ItemType> enum_from_string<ItemType>(std::string_view);
template std::optional<RunMode> enum_from_string<RunMode>(std::string_view);
template std::optional<StateId> enum_from_string<StateId>(std::string_view);

}  // namespace avtest::scenario
