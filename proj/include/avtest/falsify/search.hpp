#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "avtest/robustness/monitor.hpp"

namespace avtest::falsify {

struct Dimension {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    // JSON pointer into the scenario document; empty for synthetic systems.
    std::string binding;
    bool operator==(const Dimension&) const = default;
};

struct SearchSpace {
    std::vector<Dimension> dims;

    // Throws ValidationError: no dims, lo > hi, non-finite bounds, duplicate names.
    void validate() const;
    bool contains(const std::vector<double>& x) const;
    bool operator==(const SearchSpace&) const = default;
};

struct FalsifyConfig {
    std::size_t n_tests = 100;
    std::size_t runs = 1;
    std::uint64_t seed = 0;
    bool falsification_mode = true;
    double sim_duration_s = 15.0;
    double samp_time_s = 0.010;
    double init_temperature = 1.0;
    double cooling = 0.97;
    double proposal_scale = 0.25;

    void validate() const;
    bool operator==(const FalsifyConfig&) const = default;
};

struct Evaluation {
    std::vector<double> sample;
    double robustness = 0.0;  // +inf when the system failed
    bool operator==(const Evaluation&) const = default;
};

struct FalsificationResult {
    std::vector<double> best_sample;
    double best_robustness = std::numeric_limits<double>::infinity();
    bool falsified = false;
    std::size_t n_simulations_used = 0;
    std::vector<Evaluation> history;
    std::uint64_t seed = 0;
    bool operator==(const FalsificationResult&) const = default;
};

// Sample point -> robustness. Exceptions count as failed evaluations.
using Objective = std::function<double(const std::vector<double>&)>;
// Sample point -> trace of the system under test.
using System = std::function<robustness::Trace(const std::vector<double>&)>;

Objective make_objective(System system, robustness::FormulaPtr formula,
                         std::vector<robustness::LinearPredicate> predicates);

// Simulated annealing: first sample uniform in the box, then Gaussian
// proposals (sigma = proposal_scale * width per dim, clipped to the box) with
// Metropolis acceptance and geometric cooling. Stops at the first negative
// robustness in falsification mode. Throws Error when every evaluation fails.
FalsificationResult simulated_annealing(const Objective& objective, const SearchSpace& space,
                                        const FalsifyConfig& config, std::uint64_t seed);
FalsificationResult uniform_random_search(const Objective& objective, const SearchSpace& space,
                                          const FalsifyConfig& config, std::uint64_t seed);

FalsificationResult falsify(const System& system, const robustness::FormulaPtr& formula,
                            const std::vector<robustness::LinearPredicate>& predicates, const SearchSpace& space,
                            const FalsifyConfig& config);

// config.runs independent annealing runs seeded seed, seed+1, ...
std::vector<FalsificationResult> falsify_runs(const Objective& objective, const SearchSpace& space,
                                              const FalsifyConfig& config);

struct GridResult {
    double min_robustness = std::numeric_limits<double>::infinity();
    std::vector<double> argmin;
    std::vector<Evaluation> evaluations;
};

// Exhaustive evaluation on a regular grid that includes the box corners.
// A dimension with one point is evaluated at its lower bound.
GridResult grid_oracle(const Objective& objective, const SearchSpace& space,
                       const std::vector<std::size_t>& points_per_dim);

}  // namespace avtest::falsify
