#include <gtest/gtest.h>

#include "avtest/error.hpp"
#include "avtest/scenario/document.hpp"
#include "avtest/scenario/trace_dict.hpp"
#include "avtest/scenario/validate.hpp"
#include "generators.hpp"
#include "paths.hpp"

using namespace avtest;
using namespace avtest::scenario;
using avtest::testing::Rng;

TEST(ScenarioDocument, RandomDocumentsRoundTrip) {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        ScenarioDocument doc{avtest::testing::random_environment(rng), avtest::testing::random_config(rng)};
        const auto text = serialize_scenario(doc.environment, doc.config);
        EXPECT_EQ(parse_scenario(text), doc) << text;
        // Serialization is canonical.
        EXPECT_EQ(serialize_scenario(doc.environment, doc.config), text);
    }
}

TEST(ScenarioDocument, FileRoundTrip) {
    Rng rng(3);
    const auto dir = avtest::testing::scratch_dir("scenario_file");
    ScenarioDocument doc{avtest::testing::random_environment(rng), avtest::testing::random_config(rng)};
    save_scenario_file((dir / "s.json").string(), doc);
    EXPECT_EQ(load_scenario_file((dir / "s.json").string()), doc);
}

TEST(ScenarioDocument, TutorialFixtureLoads) {
    const auto doc = load_scenario_file(avtest::testing::data_path("tutorial/tutorial_scenario.json"));
    EXPECT_EQ(doc.environment.ego_vehicles_list.size(), 1u);
    EXPECT_EQ(doc.environment.agent_vehicles_list.size(), 1u);
    EXPECT_EQ(doc.environment.data_log_description_list.size(), 11u);
    EXPECT_EQ(doc.config.sim_duration_ms, 15000);
    EXPECT_TRUE(validate_environment(doc.environment).empty());
}

TEST(ScenarioDocument, RejectsDurationNotMultipleOfStep) {
    SimulationConfig c;
    c.sim_duration_ms = 1005;
    c.sim_step_size_ms = 10;
    try {
        auto j = to_json(ScenarioDocument{{}, SimulationConfig{}});
        j["config"]["sim_duration_ms"] = 1005;
        scenario_from_json(j);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("duration not multiple of step"), std::string::npos);
    }
    EXPECT_THROW(check_config(c), ValidationError);
}

TEST(ScenarioDocument, RejectsUnknownKeysAndBadEnums) {
    auto j = to_json(ScenarioDocument{});
    j["environment"]["bogus"] = 1;
    EXPECT_THROW(scenario_from_json(j), ParseError);

    auto k = to_json(ScenarioDocument{});
    k["environment"]["heart_beat_config"] = {{"sync_type", "SOMETIMES"}, {"period_ms", 10}};
    EXPECT_THROW(scenario_from_json(k), ParseError);
    EXPECT_THROW(parse_scenario("{not json"), ParseError);
}

TEST(ScenarioValidation, ReportsEveryViolation) {
    SimEnvironment env;
    Vehicle a;
    a.vhc_id = 1;
    a.controller = "no_such_controller";
    Vehicle b;
    b.vhc_id = 1;
    env.ego_vehicles_list = {a};
    env.agent_vehicles_list = {b};
    Pedestrian p;
    p.trajectory = {1.0, 2.0, 3.0};
    env.pedestrians_list = {p};
    env.data_log_description_list = {{ItemType::VEHICLE, 5, StateId::SPEED}};
    const auto report = validate_environment(env);
    auto has = [&](const std::string& path) {
        for (const auto& v : report)
            if (v.path == path) return true;
        return false;
    };
    EXPECT_TRUE(has("ego_vehicles_list[0].controller"));
    EXPECT_TRUE(has("agent_vehicles_list[0].vhc_id"));
    EXPECT_TRUE(has("pedestrians_list[0].trajectory"));
    EXPECT_TRUE(has("data_log_description_list[0].item_index"));
}

TEST(TraceDict, ColumnsFollowListOrder) {
    SimEnvironment env;
    env.ego_vehicles_list.push_back(Vehicle{});
    env.data_log_description_list = {{ItemType::TIME, 0, StateId::POSITION_X},
                                     {ItemType::VEHICLE, 0, StateId::POSITION_Y},
                                     {ItemType::VEHICLE, 0, StateId::POSITION_X}};
    const auto dict = populate_trace_dict(env);
    EXPECT_EQ(dict.at({ItemType::VEHICLE, 0, StateId::POSITION_X}), 2u);
    EXPECT_EQ(dict.column_names(), (std::vector<std::string>{"time_ms", "vehicle0_position_y", "vehicle0_position_x"}));
    EXPECT_EQ(dict.find_by_name("vehicle0_position_y"), std::optional<std::size_t>(1));

    env.data_log_description_list.push_back({ItemType::VEHICLE, 0, StateId::POSITION_X});
    EXPECT_THROW(populate_trace_dict(env), ValidationError);
}
