#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "avtest/ca/test_table.hpp"
#include "avtest/cli/commands.hpp"
#include "avtest/cli/plot.hpp"
#include "avtest/error.hpp"
#include "avtest/falsify/results.hpp"
#include "avtest/protocol/socket.hpp"
#include "avtest/scenario/document.hpp"
#include "avtest/sim/trace_csv.hpp"
#include "paths.hpp"

using namespace avtest;
using avtest::testing::data_path;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "avtest");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"run-scenario", "/no/such/file.json", "--embedded"}).code, cli::kExitUsage);
}

TEST(Cli, GenCaStrengths) {
    const auto dir = avtest::testing::scratch_dir("cli_gen");
    const auto params = data_path("tutorial/tutorial_params.json");
    EXPECT_EQ(run({"gen-ca", params, "-t", "0"}).code, cli::kExitUsage);
    const auto out = (dir / "t3.csv").string();
    ASSERT_EQ(run({"gen-ca", params, "-t", "3", "--out", out}).code, cli::kExitOk);
    EXPECT_EQ(ca::load_experiment_data(out).size(), 48u);
    const auto r = run({"gen-ca", params});
    ASSERT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(ca::parse_experiment_csv(r.out).parameter_names.size(), 3u);
}

TEST(Cli, RunScenarioEmbeddedWritesTrace) {
    const auto dir = avtest::testing::scratch_dir("cli_run");
    const auto trace = (dir / "trace.csv").string();
    const auto r = run({"run-scenario", data_path("tutorial/tutorial_scenario.json"), "--embedded", "--trace-out", trace});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("rows=1501"), std::string::npos);
    EXPECT_EQ(sim::read_trace_csv(slurp(trace)).row_count(), 1501u);
}

TEST(Cli, RunScenarioWithoutSupervisorIsSessionError) {
    std::uint16_t port;
    {
        protocol::Listener probe("127.0.0.1", 0);
        port = probe.port();
    }
    const auto r = run({"run-scenario", data_path("tutorial/tutorial_scenario.json"), "--endpoint",
                        "127.0.0.1:" + std::to_string(port), "--retries", "1"});
    EXPECT_EQ(r.code, cli::kExitSession);
    EXPECT_NE(r.err.find("could not connect"), std::string::npos);
}

TEST(Cli, RunCaSummary) {
    const auto dir = avtest::testing::scratch_dir("cli_ca");
    const auto r = run({"run-ca", data_path("tutorial/TutorialExample_CA_2way.csv"),
                        data_path("tutorial/tutorial_scenario.json"), data_path("tutorial/tutorial_bindings.json"),
                        "--out-dir", dir.string(), "--jobs", "4"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    EXPECT_EQ(summary["n_rows"], 16);
    EXPECT_EQ(summary["n_failed"], 0);
    ASSERT_EQ(summary["rows"].size(), 16u);
    for (std::size_t i = 0; i < 16; ++i) {
        EXPECT_EQ(summary["rows"][i]["status"], "ok");
        EXPECT_TRUE(std::filesystem::exists(dir / ("trace_" + std::to_string(i) + ".csv")));
    }
    const auto t0 = sim::read_trace_csv(slurp(dir / "trace_0.csv"));
    EXPECT_EQ(t0.rows[0][1], 20.0);
}

TEST(Cli, FalsifyVerdictAndResults) {
    const auto dir = avtest::testing::scratch_dir("cli_falsify");
    const auto out = (dir / "results.json").string();
    const auto r = run({"falsify", data_path("tutorial/tutorial_study.json"), "--out", out});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const bool falsified = r.out.rfind("FALSIFIED", 0) == 0;
    EXPECT_TRUE(falsified || r.out.rfind("NOT FALSIFIED", 0) == 0) << r.out;
    const auto report = falsify::load_results(out);
    ASSERT_EQ(report.runs.size(), 1u);
    EXPECT_EQ(report.runs[0].falsified, falsified);
}

TEST(Cli, PlotSvg) {
    const auto dir = avtest::testing::scratch_dir("cli_plot");
    const auto trace = (dir / "trace.csv").string();
    ASSERT_EQ(run({"run-scenario", data_path("tutorial/tutorial_scenario.json"), "--embedded", "--trace-out", trace}).code, 0);
    const auto svg = (dir / "out.svg").string();
    const auto r = run({"plot", trace, "--out", svg, "--columns", "vehicle0_position_x:vehicle0_position_y",
                        "--columns", "pedestrian0_position_x:pedestrian0_position_y"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto text = slurp(svg);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n') > 0, true);
    std::size_t lines = 0;
    for (auto pos = text.find("<polyline"); pos != std::string::npos; pos = text.find("<polyline", pos + 1)) ++lines;
    EXPECT_EQ(lines, 2u);
    EXPECT_EQ(run({"plot", trace, "--columns", "nope:vehicle0_position_y"}).code, cli::kExitUsage);
}

TEST(Plot, ViewBoxCoversExtentsWithMargin) {
    scenario::Trajectory t;
    t.columns = {{scenario::ItemType::TIME, 0, scenario::StateId::POSITION_X},
                 {scenario::ItemType::VEHICLE, 0, scenario::StateId::POSITION_X},
                 {scenario::ItemType::VEHICLE, 0, scenario::StateId::POSITION_Y}};
    t.rows = {{0, 0, 0}, {10, 100, 50}};
    const auto svg = cli::render_svg(t, {{"vehicle0_position_x", "vehicle0_position_y"}});
    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg, m, std::regex(R"re(viewBox="([^"]+)")re")));
    std::istringstream vb(m[1].str());
    double x, y, w, h;
    vb >> x >> y >> w >> h;
    EXPECT_NEAR(x, -5.0, 1e-9);
    EXPECT_NEAR(w, 110.0, 1e-9);
    EXPECT_NEAR(h, 55.0, 1e-9);
    // y is flipped, so the view box starts at -(ymax + margin).
    EXPECT_NEAR(y, -52.5, 1e-9);

    t.rows.clear();
    EXPECT_THROW(cli::render_svg(t, {{"vehicle0_position_x", "vehicle0_position_y"}}), ValidationError);
    EXPECT_THROW(cli::parse_column_pair("novalue"), ValidationError);
}
