#include "avtest/cli/commands.hpp"

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "avtest/ca/generator.hpp"
#include "avtest/ca/suite.hpp"
#include "avtest/cli/plot.hpp"
#include "avtest/error.hpp"
#include "avtest/falsify/study.hpp"
#include "avtest/json_util.hpp"
#include "avtest/protocol/runners.hpp"
#include "avtest/protocol/server.hpp"
#include "avtest/scenario/document.hpp"
#include "avtest/scenario/validate.hpp"
#include "avtest/sim/supervisor.hpp"
#include "avtest/sim/trace_csv.hpp"
#include "avtest/sim/trace_summary.hpp"

namespace avtest::cli {

namespace {

using sim::format_double;

struct ServeArgs {
    std::uint16_t port = 10021;
    std::string bind = "127.0.0.1";
    std::uint64_t seed = 0;
    std::size_t max_sessions = 0;
    bool fog_limits_radar = false;
};

struct RunScenarioArgs {
    std::string scenario;
    std::string endpoint = "127.0.0.1:10021";
    std::string trace_out;
    bool embedded = false;
    int run_index = 0;
    int retries = 3;
};

struct RunCaArgs {
    std::string csv, scenario, bindings, out_dir = ".";
    std::string endpoint;
    std::size_t header_lines = ca::kDefaultHeaderLines;
    std::size_t jobs = 1;
};

struct GenCaArgs {
    std::string params, out;
    std::size_t strength = 2;
    std::uint64_t seed = 0;
};

struct FalsifyArgs {
    std::string study, out, endpoint;
    bool embedded = false;
};

struct PlotArgs {
    std::string trace, out;
    std::vector<std::string> columns;
};

protocol::ScenarioRunner runner_for(const std::string& endpoint) {
    if (endpoint.empty()) return protocol::embedded_runner();
    return protocol::endpoint_runner(protocol::Endpoint::parse(endpoint));
}

scenario::ScenarioDocument load_valid_scenario(const std::string& path, std::ostream& err, bool& ok) {
    auto doc = scenario::load_scenario_file(path);
    const auto report = scenario::validate_environment(doc.environment);
    ok = report.empty();
    if (!ok) err << path << ": invalid scenario\n" << scenario::format_report(report);
    return doc;
}

int cmd_serve(const ServeArgs& a, std::ostream& out) {
    protocol::ServerOptions options;
    options.port = a.port;
    options.bind_address = a.bind;
    options.kernel.seed = a.seed;
    options.kernel.fog_limits_radar = a.fog_limits_radar;
    protocol::SupervisorServer server(options);
    out << "listening on " << a.bind << ":" << server.port() << std::endl;
    server.serve(a.max_sessions);
    return kExitOk;
}

int cmd_run_scenario(const RunScenarioArgs& a, std::ostream& out, std::ostream& err) {
    bool ok = false;
    const auto doc = load_valid_scenario(a.scenario, err, ok);
    if (!ok) return kExitUsage;

    scenario::Trajectory trajectory;
    if (a.embedded) {
        trajectory = sim::execute_scenario(doc.environment, doc.config, static_cast<std::size_t>(a.run_index)).trajectory;
    } else {
        protocol::ClientOptions options;
        options.max_connection_retry = a.retries;
        trajectory = protocol::client_session(protocol::Endpoint::parse(a.endpoint), doc.environment, doc.config,
                                              options, nullptr, static_cast<std::uint8_t>(a.run_index));
    }
    if (!a.trace_out.empty()) json_io::write_file(a.trace_out, sim::write_trace_csv(trajectory));
    const auto summary = sim::summarize_trajectory(trajectory);
    out << "rows=" << trajectory.row_count() << " columns=" << trajectory.column_count()
        << " collision=" << (summary.collision ? "yes" : "no") << "\n";
    return kExitOk;
}

int cmd_run_ca(const RunCaArgs& a, std::ostream& out, std::ostream& err) {
    const auto table = ca::load_experiment_data(a.csv, a.header_lines);
    bool ok = false;
    const auto tmpl = load_valid_scenario(a.scenario, err, ok);
    if (!ok) return kExitUsage;
    const auto bindings = ca::load_bindings_file(a.bindings);

    const auto result = ca::run_test_suite(table, tmpl, bindings, runner_for(a.endpoint), a.jobs);

    std::filesystem::create_directories(a.out_dir);
    const std::filesystem::path dir(a.out_dir);
    nlohmann::json rows = nlohmann::json::array();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        nlohmann::json row = {{"index", i}};
        if (auto it = result.trajectories.find(i); it != result.trajectories.end()) {
            const std::string file = "trace_" + std::to_string(i) + ".csv";
            json_io::write_file((dir / file).string(), sim::write_trace_csv(it->second));
            const auto s = sim::summarize_trajectory(it->second);
            row["status"] = "ok";
            row["trace"] = file;
            row["min_vehicle_distance"] =
                std::isfinite(s.min_vehicle_distance) ? nlohmann::json(s.min_vehicle_distance) : nlohmann::json();
            row["collision"] = s.collision;
            row["first_collision_time_ms"] =
                s.first_collision_time_ms ? nlohmann::json(*s.first_collision_time_ms) : nlohmann::json();
        } else {
            ++failures;
            row["status"] = "failed";
            for (const auto& f : result.failures)
                if (f.row == i) row["error"] = f.message;
            err << "row " << i << " failed: " << row.value("error", std::string()) << "\n";
        }
        rows.push_back(std::move(row));
    }
    const nlohmann::json summary = {{"csv", a.csv}, {"n_rows", table.size()}, {"n_failed", failures}, {"rows", rows}};
    json_io::write_file((dir / "summary.json").string(), summary.dump(2) + "\n");
    out << "rows=" << table.size() << " failed=" << failures << " summary=" << (dir / "summary.json").string()
        << "\n";
    return kExitOk;
}

int cmd_gen_ca(const GenCaArgs& a, std::ostream& out) {
    const auto params = ca::load_param_file(a.params);
    ca::GeneratorOptions options;
    options.seed = a.seed;
    const auto table = ca::generate_covering_array(params, a.strength, options);
    const auto csv = ca::write_experiment_csv(table, ca::kDefaultHeaderLines, a.strength);
    if (a.out.empty())
        out << csv;
    else {
        json_io::write_file(a.out, csv);
        out << "rows=" << table.size() << " strength=" << a.strength << "\n";
    }
    return kExitOk;
}

int cmd_falsify(const FalsifyArgs& a, std::ostream& out) {
    const auto prepared = falsify::prepare_study(a.study);
    std::string endpoint = a.endpoint;
    if (endpoint.empty() && !a.embedded && prepared.study.endpoint) endpoint = *prepared.study.endpoint;
    const auto report = falsify::run_study(prepared, runner_for(endpoint));
    if (!a.out.empty()) falsify::save_results(a.out, report);
    for (const auto& r : report.runs) {
        if (r.falsified)
            out << "FALSIFIED rob=" << format_double(r.best_robustness) << "\n";
        else
            out << "NOT FALSIFIED best=" << format_double(r.best_robustness) << "\n";
    }
    return kExitOk;
}

int cmd_plot(const PlotArgs& a, std::ostream& out) {
    const auto trajectory = sim::read_trace_csv(json_io::read_file(a.trace));
    std::vector<ColumnPair> pairs;
    for (const auto& c : a.columns) pairs.push_back(parse_column_pair(c));
    const auto svg = render_svg(trajectory, pairs);
    if (a.out.empty())
        out << svg;
    else
        json_io::write_file(a.out, svg);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scenario-based testing toolkit for automated driving: simulation supervisor, covering arrays, "
                 "MTL robustness and falsification",
                 "avtest"};
    app.require_subcommand(1);

    ServeArgs serve;
    auto* s = app.add_subcommand("serve", "Run a simulation supervisor");
    s->add_option("--port", serve.port, "TCP port (0 picks a free port)")->capture_default_str();
    s->add_option("--bind", serve.bind, "Bind address")->capture_default_str();
    s->add_option("--seed", serve.seed, "Kernel random seed")->capture_default_str();
    s->add_option("--max-sessions", serve.max_sessions, "Exit after this many sessions (0 = never)")
        ->capture_default_str();
    s->add_flag("--fog-limits-radar", serve.fog_limits_radar, "Clip radar range to fog visibility");

    RunScenarioArgs rs;
    auto* r = app.add_subcommand("run-scenario", "Run one scenario document and collect its trace");
    r->add_option("scenario", rs.scenario, "Scenario JSON file")->required();
    r->add_option("--endpoint", rs.endpoint, "Supervisor host:port")->capture_default_str();
    r->add_option("--trace-out", rs.trace_out, "Write the trace as CSV");
    r->add_flag("--embedded", rs.embedded, "Run the supervisor in-process instead of over a socket");
    r->add_option("--run-index", rs.run_index, "Entry of run_config_arr to use")->capture_default_str();
    r->add_option("--retries", rs.retries, "Connection attempts (1 s apart)")->capture_default_str();

    RunCaArgs rc;
    auto* c = app.add_subcommand("run-ca", "Run one simulation per covering-array row");
    c->add_option("csv", rc.csv, "Covering array CSV")->required();
    c->add_option("scenario", rc.scenario, "Scenario template JSON")->required();
    c->add_option("bindings", rc.bindings, "JSON object: parameter -> JSON pointer into the scenario")->required();
    c->add_option("--out-dir", rc.out_dir, "Directory for trace_<row>.csv and summary.json")->capture_default_str();
    c->add_option("--endpoint", rc.endpoint, "Supervisor host:port (default: in-process)");
    c->add_option("--header-lines", rc.header_lines, "Comment lines before the column-name row")
        ->capture_default_str();
    c->add_option("--jobs", rc.jobs, "Rows to run concurrently")->capture_default_str()->check(CLI::PositiveNumber);

    GenCaArgs gc;
    auto* g = app.add_subcommand("gen-ca", "Generate a t-way covering array");
    g->add_option("params", gc.params, "Parameter JSON: {\"parameters\": [{\"name\", \"values\"}]}")->required();
    g->add_option("--strength,-t", gc.strength, "Interaction strength t")->capture_default_str();
    g->add_option("--out", gc.out, "Output CSV (default: stdout)");
    g->add_option("--seed", gc.seed, "Tie-break seed")->capture_default_str();

    FalsifyArgs fa;
    auto* f = app.add_subcommand("falsify", "Robustness-guided falsification of a study");
    f->add_option("study", fa.study, "Study JSON file")->required();
    f->add_option("--out", fa.out, "Results JSON");
    f->add_option("--endpoint", fa.endpoint, "Supervisor host:port (overrides the study)");
    f->add_flag("--embedded", fa.embedded, "Ignore the study endpoint and run in-process");

    PlotArgs pa;
    auto* p = app.add_subcommand("plot", "Render trace columns as SVG polylines");
    p->add_option("trace", pa.trace, "Trace CSV")->required();
    p->add_option("--out", pa.out, "Output SVG (default: stdout)");
    p->add_option("--columns", pa.columns, "x_column:y_column pairs, one polyline each")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*s) return cmd_serve(serve, out);
        if (*r) return cmd_run_scenario(rs, out, err);
        if (*c) return cmd_run_ca(rc, out, err);
        if (*g) return cmd_gen_ca(gc, out);
        if (*f) return cmd_falsify(fa, out);
        if (*p) return cmd_plot(pa, out);
    } catch (const protocol::ConnectError& e) {
        err << "error: " << e.what() << "\n";
        return *s ? kExitUsage : kExitSession;
    } catch (const ProtocolError& e) {
        err << "error: protocol error " << e.code() << ": " << e.what() << "\n";
        return kExitSession;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace avtest::cli
