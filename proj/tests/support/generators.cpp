#include "generators.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace avtest::testing {

using namespace scenario;

double uniform(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_int(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::string random_name(Rng& rng, std::size_t max_len) {
    static constexpr char alphabet[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
    std::string s(1, 'a' + static_cast<char>(rng() % 26));
    const auto len = rng() % max_len;
    for (std::size_t i = 0; i < len; ++i) s += alphabet[rng() % (sizeof alphabet - 1)];
    return s;
}

namespace {

// Doubles with awkward binary expansions, signs and magnitudes.
double any_double(Rng& rng) {
    switch (rng() % 4) {
        case 0: return uniform(rng, -1000.0, 1000.0);
        case 1: return std::ldexp(uniform(rng, -1.0, 1.0), uniform_int(rng, -40, 40));
        case 2: return static_cast<double>(uniform_int(rng, -50, 50));
        default: return uniform(rng, 0.0, 1.0) / 3.0;
    }
}

template <std::size_t N>
std::array<double, N> any_array(Rng& rng) {
    std::array<double, N> a{};
    for (auto& v : a) v = any_double(rng);
    return a;
}

std::array<double, 3> color(Rng& rng) { return {uniform(rng, 0, 1), uniform(rng, 0, 1), uniform(rng, 0, 1)}; }

template <typename E>
E any_enum(Rng& rng, int count) {
    return static_cast<E>(rng() % static_cast<std::uint64_t>(count));
}

std::string any_text(Rng& rng) {
    static const char* samples[] = {"", "\"radar\"", "40 0 6", "0 1 0 1.5708", "ünïcode ✓", "tab\tand \"quotes\""};
    return rng() % 2 ? random_name(rng) : samples[rng() % std::size(samples)];
}

Vehicle random_vehicle(Rng& rng, int id) {
    Vehicle v;
    v.def_name = random_name(rng);
    v.vhc_id = id;
    v.vehicle_model = rng() % 2 ? "ToyotaPrius" : "TeslaModel3";
    v.rotation = any_array<4>(rng);
    v.current_position = any_array<3>(rng);
    v.current_orientation = any_double(rng);
    v.color = color(rng);
    v.controller = rng() % 2 ? "void" : "path_and_speed_follower";
    v.is_controller_name_absolute = rng() % 2;
    for (int i = uniform_int(rng, 0, 3); i > 0; --i) v.controller_arguments.push_back(any_text(rng));
    for (int i = uniform_int(rng, 0, 2); i > 0; --i) v.vehicle_parameters.push_back(any_text(rng));
    for (int i = uniform_int(rng, 0, 2); i > 0; --i) v.controller_parameters.push_back(any_text(rng));
    for (int i = uniform_int(rng, 0, 3); i > 0; --i) {
        SensorSpec s;
        s.sensor_type = random_name(rng);
        s.sensor_location = any_enum<SensorLocation>(rng, 5);
        for (int k = uniform_int(rng, 0, 2); k > 0; --k) s.sensor_fields.push_back({any_text(rng), any_text(rng)});
        v.sensor_array.push_back(std::move(s));
    }
    return v;
}

LogItemDescription random_item(Rng& rng) {
    return {any_enum<ItemType>(rng, 3), uniform_int(rng, 0, 3), any_enum<StateId>(rng, 6)};
}

}  // namespace

SimEnvironment random_environment(Rng& rng) {
    SimEnvironment env;
    if (rng() % 2) env.fog = Fog{random_name(rng), FogType::LINEAR, color(rng), uniform(rng, 1, 2000)};
    if (rng() % 2) env.heart_beat_config = HeartbeatConfig{any_enum<SyncType>(rng, 3), uniform_int(rng, 1, 5000)};
    if (rng() % 2)
        env.view_follow_config = ViewFollowConfig{any_enum<ItemType>(rng, 3), uniform_int(rng, 0, 3), any_array<3>(rng),
                                                  any_array<4>(rng)};
    int id = 1;
    for (int i = uniform_int(rng, 0, 2); i > 0; --i) env.ego_vehicles_list.push_back(random_vehicle(rng, id++));
    for (int i = uniform_int(rng, 0, 3); i > 0; --i) env.agent_vehicles_list.push_back(random_vehicle(rng, id++));
    for (int i = uniform_int(rng, 0, 2); i > 0; --i) {
        Pedestrian p;
        p.def_name = random_name(rng);
        p.ped_id = i;
        p.rotation = any_array<4>(rng);
        p.current_position = any_array<3>(rng);
        p.shirt_color = color(rng);
        p.pants_color = color(rng);
        p.shoes_color = color(rng);
        p.controller = rng() % 2 ? "void" : "pedestrian_control";
        p.target_speed = uniform(rng, 0, 5);
        for (int k = 2 * uniform_int(rng, 0, 3); k > 0; --k) p.trajectory.push_back(any_double(rng));
        env.pedestrians_list.push_back(std::move(p));
    }
    for (int i = uniform_int(rng, 0, 2); i > 0; --i) {
        Road r;
        r.def_name = random_name(rng);
        r.rotation = any_array<4>(rng);
        r.position = any_array<3>(rng);
        r.number_of_lanes = uniform_int(rng, 1, 4);
        if (rng() % 2) r.width = uniform(rng, 1, 20);
        r.length = uniform(rng, 1, 3000);
        env.road_list.push_back(r);
    }
    for (int i = uniform_int(rng, 0, 2); i > 0; --i) {
        RoadDisturbance d;
        d.disturbance_id = i;
        d.disturbance_type = any_enum<DisturbanceType>(rng, 4);
        d.rotation = any_array<4>(rng);
        d.position = any_array<3>(rng);
        d.length = uniform(rng, 0.5, 100);
        d.width = uniform(rng, 0.5, 10);
        d.height = uniform(rng, 0.01, 0.2);
        d.surface_height = uniform(rng, 0.0, 0.1);
        d.inter_object_spacing = uniform(rng, 0.1, 3);
        env.road_disturbances_list.push_back(d);
    }
    for (int i = uniform_int(rng, 0, 2); i > 0; --i) {
        GenericObject g;
        g.def_name = random_name(rng);
        g.object_name = random_name(rng);
        for (int k = uniform_int(rng, 0, 3); k > 0; --k) g.object_parameters.push_back({any_text(rng), any_text(rng)});
        env.generic_sim_objects_list.push_back(g);
    }
    for (int i = uniform_int(rng, 0, 4); i > 0; --i) {
        ControllerParameter c;
        if (rng() % 2) c.vehicle_id = uniform_int(rng, 1, 5);
        c.parameter_name = random_name(rng);
        for (int k = uniform_int(rng, 0, 3); k > 0; --k) c.parameter_data.push_back(any_double(rng));
        env.control_params_list.push_back(c);
    }
    for (int i = uniform_int(rng, 0, 3); i > 0; --i) env.initial_state_config_list.push_back({random_item(rng), any_double(rng)});
    for (int i = uniform_int(rng, 0, 6); i > 0; --i) env.data_log_description_list.push_back(random_item(rng));
    if (rng() % 2) env.data_log_period_ms = uniform_int(rng, 1, 100);
    return env;
}

SimulationConfig random_config(Rng& rng) {
    SimulationConfig c;
    c.world_file = random_name(rng) + ".wbt";
    c.server_port = uniform_int(rng, 1024, 65535);
    c.server_ip = rng() % 2 ? "127.0.0.1" : "localhost";
    c.sim_step_size_ms = uniform_int(rng, 1, 20);
    c.sim_duration_ms = c.sim_step_size_ms * uniform_int(rng, 0, 2000);
    for (int i = uniform_int(rng, 0, 3); i > 0; --i) c.run_config_arr.push_back({any_enum<RunMode>(rng, 3)});
    return c;
}

Trajectory random_trajectory(Rng& rng) {
    Trajectory t;
    for (int i = uniform_int(rng, 0, 6); i > 0; --i) t.columns.push_back(random_item(rng));
    for (int r = uniform_int(rng, 0, 20); r > 0; --r) {
        std::vector<double> row;
        for (std::size_t c = 0; c < t.columns.size(); ++c) row.push_back(any_double(rng));
        t.rows.push_back(std::move(row));
    }
    return t;
}

protocol::WireMessage random_message(Rng& rng) {
    using namespace protocol;
    switch (rng() % 8) {
        case 0: return Hello{static_cast<std::uint16_t>(rng())};
        case 1: return Ack{};
        case 2: return SetupEnvironment{random_environment(rng)};
        case 3: return StartSim{random_config(rng), static_cast<std::uint8_t>(rng())};
        case 4: return Heartbeat{rng(), rng() % 2 ? SimStatus::RUNNING : SimStatus::FINISHED};
        case 5: return Continue{};
        case 6: return TraceData{random_trajectory(rng)};
        default: return ErrorReport{static_cast<std::uint16_t>(rng()), any_text(rng)};
    }
}

SimEnvironment random_runnable_environment(Rng& rng) {
    SimEnvironment env;
    int id = 1;
    const int vehicles = uniform_int(rng, 1, 3);
    for (int i = 0; i < vehicles; ++i) {
        Vehicle v;
        v.vhc_id = id++;
        v.current_position = {uniform(rng, -50, 50), 0.35, uniform(rng, -5, 5)};
        v.current_orientation = uniform(rng, -std::numbers::pi, std::numbers::pi);
        if (rng() % 2) {
            v.controller = "path_and_speed_follower";
            v.controller_arguments = {std::to_string(uniform_int(rng, 0, 20))};
            for (int k = 0; k < 3; ++k)
                env.control_params_list.push_back({v.vhc_id, "target_position", {uniform(rng, -100, 100), uniform(rng, -10, 10)}});
        }
        (i == 0 ? env.ego_vehicles_list : env.agent_vehicles_list).push_back(v);
        env.initial_state_config_list.push_back({{ItemType::VEHICLE, i, StateId::SPEED}, uniform(rng, 0, 15)});
    }
    Pedestrian p;
    p.ped_id = 1;
    p.current_position = {uniform(rng, -20, 20), 1.3, uniform(rng, -5, 5)};
    p.controller = "pedestrian_control";
    p.target_speed = uniform(rng, 0.5, 4);
    p.trajectory = {uniform(rng, -20, 20), uniform(rng, -5, 5), uniform(rng, -20, 20), uniform(rng, -5, 5)};
    env.pedestrians_list.push_back(p);

    env.data_log_description_list.push_back({ItemType::TIME, 0, StateId::POSITION_X});
    for (int i = 0; i < vehicles; ++i)
        for (auto s : {StateId::POSITION_X, StateId::POSITION_Y, StateId::ORIENTATION, StateId::SPEED})
            env.data_log_description_list.push_back({ItemType::VEHICLE, i, s});
    env.data_log_description_list.push_back({ItemType::PEDESTRIAN, 0, StateId::POSITION_X});
    env.data_log_description_list.push_back({ItemType::PEDESTRIAN, 0, StateId::POSITION_Y});
    env.data_log_period_ms = 10 * uniform_int(rng, 1, 3);
    return env;
}

robustness::Trace random_trace(Rng& rng, std::size_t samples, std::size_t dim) {
    robustness::Trace t;
    t.dim = dim;
    // Uniform 10 ms grid, as produced by the simulator, expressed in seconds.
    for (std::size_t i = 0; i < samples; ++i) t.times.push_back(static_cast<double>(10 * i) / 1000.0);
    for (std::size_t i = 0; i < samples * dim; ++i)
        t.states.push_back(rng() % 4 ? uniform(rng, -10, 10) : static_cast<double>(uniform_int(rng, -3, 3)));
    for (std::size_t c = 0; c < dim; ++c) t.column_names.push_back("s" + std::to_string(c));
    return t;
}

std::vector<robustness::LinearPredicate> random_predicates(Rng& rng, std::size_t count, std::size_t dim) {
    std::vector<robustness::LinearPredicate> out;
    for (std::size_t i = 0; i < count; ++i) {
        robustness::LinearPredicate p{"p" + std::to_string(i), std::vector<double>(dim, 0.0), uniform(rng, -5, 5)};
        for (auto& a : p.A)
            if (rng() % 2) a = rng() % 2 ? uniform(rng, -2, 2) : static_cast<double>(uniform_int(rng, -1, 1));
        out.push_back(std::move(p));
    }
    return out;
}

robustness::FormulaPtr random_formula(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms,
                                      bool with_intervals) {
    using namespace robustness;
    if (depth == 0 || rng() % 5 == 0) return atom(atoms[rng() % atoms.size()]);
    auto interval = [&]() -> std::optional<TimeInterval> {
        if (!with_intervals || rng() % 2) return std::nullopt;
        const double lo = 0.01 * uniform_int(rng, 0, 8);
        const double hi = rng() % 4 == 0 ? std::numeric_limits<double>::infinity() : lo + 0.01 * uniform_int(rng, 0, 10);
        return TimeInterval{lo, hi};
    };
    auto sub = [&] { return random_formula(rng, depth - 1, atoms, with_intervals); };
    switch (rng() % 8) {
        case 0: return negation(sub());
        case 1: return conjunction(sub(), sub());
        case 2: return disjunction(sub(), sub());
        case 3: return implication(sub(), sub());
        case 4: return always(sub(), interval());
        case 5: return eventually(sub(), interval());
        case 6: {
            auto a = sub();
            auto b = sub();
            return until(a, b, interval());
        }
        default: return atom(atoms[rng() % atoms.size()]);
    }
}

robustness::Requirement random_requirement(Rng& rng) {
    robustness::Requirement req;
    std::vector<std::string> names;
    for (int i = uniform_int(rng, 1, 4); i > 0; --i) {
        robustness::PredicateSpec p;
        p.name = "pred" + std::to_string(i) + random_name(rng, 3);
        for (int k = uniform_int(rng, 0, 3); k > 0; --k) p.A[random_name(rng)] = any_double(rng);
        p.b = any_double(rng);
        names.push_back(p.name);
        req.predicates.push_back(p);
    }
    req.formula = robustness::to_string(*random_formula(rng, 3, names));
    return req;
}

std::vector<ca::ParamSpec> random_param_specs(Rng& rng, std::size_t max_params, std::size_t max_values) {
    std::vector<ca::ParamSpec> out;
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_params)));
    for (std::size_t i = 0; i < n; ++i) {
        ca::ParamSpec p{"param" + std::to_string(i), {}};
        const auto k = uniform_int(rng, 1, static_cast<int>(max_values));
        for (int v = 0; v < k; ++v) p.values.push_back(std::to_string(v * 5) + (rng() % 3 == 0 ? ".5" : ""));
        // Suffixes can collide ("0" vs "0"); keep values unique.
        std::sort(p.values.begin(), p.values.end());
        p.values.erase(std::unique(p.values.begin(), p.values.end()), p.values.end());
        out.push_back(std::move(p));
    }
    return out;
}

ca::TestTable random_table(Rng& rng) {
    ca::TestTable t;
    const int cols = uniform_int(rng, 1, 5);
    for (int c = 0; c < cols; ++c) t.parameter_names.push_back("col" + std::to_string(c) + random_name(rng, 4));
    for (int r = uniform_int(rng, 0, 12); r > 0; --r) {
        std::vector<std::string> row;
        for (int c = 0; c < cols; ++c)
            row.push_back(rng() % 6 == 0 ? "*" : std::to_string(uniform_int(rng, -20, 20)) + (rng() % 2 ? ".25" : ""));
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

falsify::SearchSpace random_space(Rng& rng) {
    falsify::SearchSpace s;
    for (int i = uniform_int(rng, 1, 4); i > 0; --i) {
        const double lo = any_double(rng);
        s.dims.push_back({"dim" + std::to_string(i), lo, lo + std::abs(any_double(rng)),
                          "/environment/pedestrians_list/0/target_speed"});
    }
    return s;
}

falsify::FalsifyConfig random_falsify_config(Rng& rng) {
    falsify::FalsifyConfig c;
    c.n_tests = static_cast<std::size_t>(uniform_int(rng, 1, 500));
    c.runs = static_cast<std::size_t>(uniform_int(rng, 1, 5));
    c.seed = rng();
    c.falsification_mode = rng() % 2;
    c.sim_duration_s = uniform(rng, 0, 60);
    c.samp_time_s = uniform(rng, 0.001, 0.1);
    c.init_temperature = uniform(rng, 0.01, 10);
    c.cooling = uniform(rng, 0.5, 0.999);
    c.proposal_scale = uniform(rng, 0.01, 1);
    return c;
}

}  // namespace

falsify::Study random_study(Rng& rng) {
    falsify::Study s;
    s.scenario = random_name(rng) + ".json";
    s.requirement = "req/" + random_name(rng) + ".json";
    s.space = random_space(rng);
    s.config = random_falsify_config(rng);
    if (rng() % 2) s.endpoint = "127.0.0.1:" + std::to_string(uniform_int(rng, 1024, 65535));
    return s;
}

falsify::FalsificationReport random_report(Rng& rng) {
    falsify::FalsificationReport r;
    r.formula = random_requirement(rng).formula;
    r.space = random_space(rng);
    r.config = random_falsify_config(rng);
    for (int run = uniform_int(rng, 1, 3); run > 0; --run) {
        falsify::FalsificationResult res;
        res.seed = rng();
        for (int k = uniform_int(rng, 1, 30); k > 0; --k) {
            falsify::Evaluation e;
            for (std::size_t d = 0; d < r.space.dims.size(); ++d) e.sample.push_back(any_double(rng));
            e.robustness = rng() % 10 == 0 ? std::numeric_limits<double>::infinity() : any_double(rng);
            if (res.best_sample.empty() || e.robustness < res.best_robustness) {
                res.best_robustness = e.robustness;
                res.best_sample = e.sample;
            }
            res.history.push_back(std::move(e));
        }
        res.n_simulations_used = res.history.size();
        res.falsified = res.best_robustness < 0.0;
        r.runs.push_back(std::move(res));
    }
    return r;
}

}  // namespace avtest::testing
