#include <gtest/gtest.h>

#include <fstream>

#include "avtest/ca/generator.hpp"
#include "avtest/ca/suite.hpp"
#include "avtest/ca/test_table.hpp"
#include "avtest/error.hpp"
#include "avtest/protocol/runners.hpp"
#include "avtest/scenario/document.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "paths.hpp"

using namespace avtest;
using namespace avtest::ca;
using avtest::testing::Rng;

namespace {

const std::string kListing = avtest::testing::data_path("tutorial/TutorialExample_CA_2way.csv");

}  // namespace

TEST(TestTable, LoadsListing) {
    const auto t = load_experiment_data(kListing);
    EXPECT_EQ(t.parameter_names, (std::vector<std::string>{"ego_init_speed", "ego_x_position", "pedestrian_speed"}));
    ASSERT_EQ(t.size(), 16u);
    EXPECT_EQ(t.rows.front(), (std::vector<std::string>{"0", "20", "2"}));
    EXPECT_EQ(t.rows.back(), (std::vector<std::string>{"15", "15", "5"}));
    const auto row = get_experiment_all_fields(t, 4);
    EXPECT_EQ(get_field_value(row, "ego_x_position"), "25");
    EXPECT_THROW(get_field_value(row, "missing"), Error);
    EXPECT_THROW(get_experiment_all_fields(t, 16), Error);
}

TEST(TestTable, RaggedRowReportsLine) {
    const std::string text = "# a\n# b\nx,y\n1,2\n3\n";
    try {
        parse_experiment_csv(text, 2);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
    }
}

TEST(TestTable, IndexColumn) {
    const std::string text = "id,a,b\nr1,1,2\nr2,3,*\n";
    const auto t = parse_experiment_csv(text, 0, "id");
    EXPECT_EQ(t.parameter_names, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(t.row_index, (std::vector<std::string>{"r1", "r2"}));
    EXPECT_EQ(t.rows[1][1], "*");
    EXPECT_THROW(parse_experiment_csv(text, 0, "nope"), Error);
}

TEST(TestTable, RandomTablesRoundTrip) {
    Rng rng(10);
    const auto dir = avtest::testing::scratch_dir("tables");
    for (int i = 0; i < 100; ++i) {
        const auto t = avtest::testing::random_table(rng);
        const std::size_t header = rng() % 9;
        const auto path = (dir / "t.csv").string();
        save_experiment_data(path, t, header, rng() % 4);
        EXPECT_EQ(load_experiment_data(path, header), t);
    }
}

TEST(TestTable, WriterMatchesListingPreamble) {
    const auto t = load_experiment_data(kListing);
    const auto text = write_experiment_csv(t, kDefaultHeaderLines, 2);
    EXPECT_NE(text.find("# Degree of interaction coverage: 2\n"), std::string::npos);
    EXPECT_NE(text.find("# Number of configurations: 16\n"), std::string::npos);
    EXPECT_NE(text.find("# Maximum number of values per parameter: 4\n"), std::string::npos);
    EXPECT_EQ(parse_experiment_csv(text), t);
}

TEST(ParamSpecs, JsonAndValidation) {
    const auto params = load_param_file(avtest::testing::data_path("tutorial/tutorial_params.json"));
    ASSERT_EQ(params.size(), 3u);
    EXPECT_EQ(params[0].values, (std::vector<std::string>{"0", "5", "10", "15"}));
    EXPECT_EQ(param_specs_from_json(to_json(params)), params);
    EXPECT_THROW(validate_param_specs({{"a", {"1", "1"}}}), ValidationError);
    EXPECT_THROW(validate_param_specs({{"a", {}}}), ValidationError);
    EXPECT_THROW(validate_param_specs({{"a", {"1"}}, {"a", {"2"}}}), ValidationError);
}

TEST(Generator, ListingIsPairwiseComplete) {
    const auto params = load_param_file(avtest::testing::data_path("tutorial/tutorial_params.json"));
    const auto t = load_experiment_data(kListing);
    EXPECT_TRUE(verify_coverage(t, params, 2).empty());
    EXPECT_EQ(count_tuples(params, 2), 40u);
    EXPECT_EQ(avtest::testing::covered_pairs(t).size(), 40u);
}

TEST(Generator, RandomSystemsFullyCovered) {
    Rng rng(123);
    for (int i = 0; i < 40; ++i) {
        const std::size_t t = 2 + rng() % 2;
        std::vector<ParamSpec> params;
        do params = avtest::testing::random_param_specs(rng, 6, 5);
        while (params.size() < t);
        const auto table = generate_covering_array(params, t, {rng(), 50});
        const auto [covered, total] = avtest::testing::tway_coverage(table.rows, params, static_cast<int>(t));
        EXPECT_EQ(covered, total);
        EXPECT_EQ(total, count_tuples(params, t));
        EXPECT_TRUE(verify_coverage(table, params, t).empty());
    }
}

TEST(Generator, DeterministicPerSeedAndBounded) {
    const auto params = load_param_file(avtest::testing::data_path("tutorial/tutorial_params.json"));
    const auto a = generate_covering_array(params, 2, {7, 50});
    EXPECT_EQ(a, generate_covering_array(params, 2, {7, 50}));
    EXPECT_GE(a.size(), 16u);
    EXPECT_LE(a.size(), 24u);
    EXPECT_EQ(generate_covering_array(params, 3).size(), 48u);
    EXPECT_THROW(generate_covering_array(params, 0), ValidationError);
    EXPECT_THROW(generate_covering_array(params, 4), ValidationError);
}

TEST(Generator, DontCareCoversNothing) {
    const std::vector<ParamSpec> params{{"a", {"0", "1"}}, {"b", {"0", "1"}}};
    TestTable t{{"a", "b"}, {{"0", "0"}, {"0", "1"}, {"1", "*"}, {"1", "1"}}, std::nullopt, {}};
    const auto missing = verify_coverage(t, params, 2);
    ASSERT_EQ(missing.size(), 1u);
    EXPECT_EQ(missing[0].values, (std::vector<std::string>{"1", "0"}));
}

TEST(Suite, InstantiateBindsCells) {
    const auto doc = scenario::load_scenario_file(avtest::testing::data_path("tutorial/tutorial_scenario.json"));
    const auto bindings = load_bindings_file(avtest::testing::data_path("tutorial/tutorial_bindings.json"));
    const auto tmpl = scenario::to_json(doc);
    const auto inst = instantiate(tmpl, {{"ego_init_speed", "5"}, {"ego_x_position", "25"}, {"pedestrian_speed", "*"}},
                                  bindings);
    EXPECT_EQ(inst.environment.initial_state_config_list[0].value, 5.0);
    EXPECT_EQ(inst.environment.ego_vehicles_list[0].current_position[0], 25.0);
    EXPECT_EQ(inst.environment.pedestrians_list[0].target_speed, doc.environment.pedestrians_list[0].target_speed);
    EXPECT_THROW(instantiate(tmpl, {{"ego_init_speed", "fast"}}, bindings), ValidationError);

    const auto table = load_experiment_data(kListing);
    EXPECT_NO_THROW(check_bindings(table, tmpl, bindings));
    EXPECT_THROW(check_bindings(table, tmpl, {{"ego_init_speed", "/environment/nothing"}}), ValidationError);
    EXPECT_THROW(check_bindings(table, tmpl, {{"not_a_column", "/config/sim_duration_ms"}}), ValidationError);
}

TEST(Suite, FailingRowIsRecordedAndOthersRun) {
    auto doc = scenario::load_scenario_file(avtest::testing::data_path("tutorial/tutorial_scenario.json"));
    doc.config.sim_duration_ms = 500;
    const auto bindings = load_bindings_file(avtest::testing::data_path("tutorial/tutorial_bindings.json"));
    const auto table = load_experiment_data(kListing);
    const auto embedded = protocol::embedded_runner();
    const Runner runner = [&](const scenario::ScenarioDocument& d) {
        if (d.environment.pedestrians_list[0].target_speed == 4.0 &&
            d.environment.ego_vehicles_list[0].current_position[0] == 25.0)
            throw SetupError("injected failure");
        return embedded(d);
    };
    for (std::size_t jobs : {1u, 4u}) {
        const auto result = run_test_suite(table, doc, bindings, runner, jobs);
        ASSERT_EQ(result.failures.size(), 1u);
        EXPECT_EQ(result.failures[0].row, 10u);
        EXPECT_NE(result.failures[0].message.find("injected failure"), std::string::npos);
        EXPECT_EQ(result.trajectories.size(), 15u);
        EXPECT_EQ(result.trajectories.at(0).row_count(), 51u);
        EXPECT_EQ(result.trajectories.at(0).rows[0][1], 20.0);
        EXPECT_EQ(result.trajectories.at(1).rows[0][1], 25.0);
    }
}
