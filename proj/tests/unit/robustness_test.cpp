#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>

#include "avtest/error.hpp"
#include "avtest/kernels/kernels.hpp"
#include "avtest/robustness/formula.hpp"
#include "avtest/robustness/monitor.hpp"
#include "avtest/robustness/predicate.hpp"
#include "avtest/scenario/trace_dict.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "paths.hpp"

using namespace avtest;
using namespace avtest::robustness;
using avtest::testing::Rng;

namespace {

const std::vector<std::string> kTutorialColumns{
    "vehicle0_position_x", "vehicle0_position_y", "vehicle0_orientation", "vehicle0_speed",
    "vehicle1_position_x", "vehicle1_position_y", "vehicle1_orientation", "vehicle1_speed",
    "pedestrian0_position_x", "pedestrian0_position_y"};

Trace single_sample(std::vector<double> state) {
    Trace t;
    t.times = {0.0};
    t.dim = state.size();
    t.states = std::move(state);
    return t;
}

}  // namespace

TEST(FormulaParser, PaperFormulaShape) {
    const auto f = parse_formula("[](!(y_check1 /\\ y_check2 /\\ x_check1 /\\ x_check2))");
    const auto want = always(negation(conjunction(
        conjunction(conjunction(atom("y_check1"), atom("y_check2")), atom("x_check1")), atom("x_check2"))));
    EXPECT_EQ(*f, *want);
    EXPECT_EQ(atom_names(*f), (std::vector<std::string>{"y_check1", "y_check2", "x_check1", "x_check2"}));
}

TEST(FormulaParser, PrecedenceAndIntervals) {
    EXPECT_EQ(*parse_formula("a \\/ b /\\ c"), *disjunction(atom("a"), conjunction(atom("b"), atom("c"))));
    EXPECT_EQ(*parse_formula("a -> b -> c"), *implication(atom("a"), implication(atom("b"), atom("c"))));
    EXPECT_EQ(*parse_formula("a /\\ b U c"), *conjunction(atom("a"), until(atom("b"), atom("c"))));
    EXPECT_EQ(*parse_formula("[]_[0,5] p"), *always(atom("p"), TimeInterval{0, 5}));
    EXPECT_EQ(*parse_formula("<>_[1.5,inf] p"), *eventually(atom("p"), TimeInterval{1.5, std::numeric_limits<double>::infinity()}));
    EXPECT_EQ(*parse_formula("a U_[0,2] b"), *until(atom("a"), atom("b"), TimeInterval{0, 2}));
}

TEST(FormulaParser, ErrorsCarryPosition) {
    try {
        parse_formula("p /\\");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_formula("[]_[3,1] p"), ParseError);
    EXPECT_THROW(parse_formula("(a"), ParseError);
    EXPECT_THROW(parse_formula(""), ParseError);
}

TEST(FormulaParser, PrintParseFixedPoint) {
    Rng rng(8);
    const std::vector<std::string> atoms{"p0", "p1", "q", "long_name_2"};
    for (int i = 0; i < 500; ++i) {
        const auto f = avtest::testing::random_formula(rng, 4, atoms);
        const auto text = to_string(*f);
        const auto g = parse_formula(text);
        EXPECT_EQ(*g, *f) << text;
        EXPECT_EQ(to_string(*g), text);
    }
}

TEST(Predicate, PaperExamples) {
    const auto req = load_requirement_file(avtest::testing::data_path("tutorial/tutorial_requirement.json"));
    const auto preds = bind_predicates(req.predicates, kTutorialColumns);
    const std::vector<double> x{10, 0, 0, 0, 12, 1, 0, 0, 0, 0};
    EXPECT_EQ(preds[0].robustness(x), 0.5);
    EXPECT_EQ(preds[3].robustness(x), 2.0);
    LinearPredicate zero{"z", std::vector<double>(10, 0.0), 0.0};
    EXPECT_EQ(zero.robustness(x), 0.0);
}

TEST(Predicate, BindingErrors) {
    EXPECT_THROW(bind_predicates({{"p", {{"nope", 1.0}}, 0.0}}, kTutorialColumns), ValidationError);
    EXPECT_THROW(bind_predicates({{"p", {}, 0.0}, {"p", {}, 1.0}}, kTutorialColumns), ValidationError);
}

TEST(Robustness, SingleSamplePaperExample) {
    const auto req = load_requirement_file(avtest::testing::data_path("tutorial/tutorial_requirement.json"));
    const auto preds = bind_predicates(req.predicates, kTutorialColumns);
    const auto trace = single_sample({10, 0, 0, 0, 12, 1, 0, 0, 0, 0});
    EXPECT_NEAR(robustness::robustness(*parse_formula(req.formula), preds, trace), -0.5, 1e-12);
}

TEST(Robustness, ConstantSignal) {
    Rng rng(2);
    auto trace = avtest::testing::random_trace(rng, 12, 2);
    const std::vector<LinearPredicate> preds{{"p", {0.0, 0.0}, 1.0}};
    EXPECT_EQ(robustness::robustness(*parse_formula("[](p)"), preds, trace), 1.0);
}

TEST(Robustness, EmptyWindowConventions) {
    Rng rng(2);
    const auto trace = avtest::testing::random_trace(rng, 3, 1);  // spans 0.02 s
    const std::vector<LinearPredicate> preds{{"p", {1.0}, 0.0}};
    EXPECT_EQ(robustness::robustness(*parse_formula("[]_[1,2] p"), preds, trace), std::numeric_limits<double>::infinity());
    EXPECT_EQ(robustness::robustness(*parse_formula("<>_[1,2] p"), preds, trace), -std::numeric_limits<double>::infinity());
}

TEST(Robustness, MatchesNaiveOracleOnBothIsas) {
    Rng rng(77);
    for (auto isa : {kernels::Isa::SCALAR, kernels::Isa::AVX2}) {
        if (!kernels::isa_available(isa)) continue;
        kernels::force_isa(isa);
        for (int i = 0; i < 300; ++i) {
            const std::size_t n = 1 + rng() % 20, dim = 1 + rng() % 4;
            const auto trace = avtest::testing::random_trace(rng, n, dim);
            const auto preds = avtest::testing::random_predicates(rng, 1 + rng() % 4, dim);
            std::vector<std::string> names;
            for (const auto& p : preds) names.push_back(p.name);
            const auto f = avtest::testing::random_formula(rng, 4, names);
            const double want = avtest::testing::naive_robustness(*f, preds, trace);
            const double got = robustness::robustness(*f, preds, trace);
            if (std::isinf(want))
                EXPECT_EQ(got, want) << to_string(*f);
            else
                EXPECT_NEAR(got, want, 1e-12) << to_string(*f);

            const auto signal = robustness_signal(*f, preds, trace);
            ASSERT_EQ(signal.size(), n);
            EXPECT_EQ(std::bit_cast<std::uint64_t>(signal[0]), std::bit_cast<std::uint64_t>(got));
        }
    }
    kernels::force_isa(std::nullopt);
}

TEST(Robustness, NegationDuality) {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto trace = avtest::testing::random_trace(rng, 1 + rng() % 15, 2);
        const auto preds = avtest::testing::random_predicates(rng, 2, 2);
        const auto f = avtest::testing::random_formula(rng, 3, {"p0", "p1"});
        EXPECT_EQ(robustness::robustness(*negation(f), preds, trace), -robustness::robustness(*f, preds, trace));
    }
}

TEST(Robustness, SignSoundness) {
    // Positive robustness implies satisfaction; negative implies violation.
    Rng rng(19);
    int decided = 0;
    for (int i = 0; i < 400; ++i) {
        const auto trace = avtest::testing::random_trace(rng, 1 + rng() % 15, 3);
        const auto preds = avtest::testing::random_predicates(rng, 3, 3);
        const auto f = avtest::testing::random_formula(rng, 4, {"p0", "p1", "p2"});
        const double r = robustness::robustness(*f, preds, trace);
        const bool sat = avtest::testing::naive_satisfies(*f, preds, trace);
        if (r > 0) {
            EXPECT_TRUE(sat) << to_string(*f);
        }
        if (r < 0) {
            EXPECT_FALSE(sat) << to_string(*f);
        }
        decided += r != 0;
    }
    EXPECT_GT(decided, 300);
}

TEST(Robustness, ErrorsOnUnknownAtomOrDimension) {
    const auto trace = single_sample({1.0, 2.0});
    EXPECT_THROW(robustness::robustness(*parse_formula("q"), {{"p", {1.0, 0.0}, 0.0}}, trace), Error);
    EXPECT_THROW(robustness::robustness(*parse_formula("p"), {{"p", {1.0}, 0.0}}, trace), Error);
}

TEST(Monitor, ConvertTrajectory) {
    scenario::Trajectory t;
    t.columns = {{scenario::ItemType::TIME, 0, scenario::StateId::POSITION_X},
                 {scenario::ItemType::VEHICLE, 0, scenario::StateId::SPEED}};
    t.rows = {{0, 1.0}, {10, 2.0}};
    const auto trace = convert_trajectory(t);
    EXPECT_EQ(trace.times, (std::vector<double>{0.0, 0.01}));
    EXPECT_EQ(trace.column_names, (std::vector<std::string>{"vehicle0_speed"}));
    std::swap(t.columns[0], t.columns[1]);
    EXPECT_THROW(convert_trajectory(t), Error);
}

TEST(Requirement, RandomFilesRoundTrip) {
    Rng rng(6);
    const auto dir = avtest::testing::scratch_dir("requirements");
    for (int i = 0; i < 50; ++i) {
        const auto req = avtest::testing::random_requirement(rng);
        const auto path = (dir / ("r" + std::to_string(i) + ".json")).string();
        save_requirement_file(path, req);
        EXPECT_EQ(load_requirement_file(path), req);
    }
}
