#include "avtest/falsify/search.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "avtest/error.hpp"

namespace avtest::falsify {

void SearchSpace::validate() const {
    if (dims.empty()) throw ValidationError("search space has no dimensions");
    std::set<std::string> names;
    for (const auto& d : dims) {
        if (!names.insert(d.name).second) throw ValidationError("duplicate search dimension '" + d.name + "'");
        if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || d.lo > d.hi)
            throw ValidationError("dimension '" + d.name + "' needs finite bounds with lo <= hi");
    }
}

bool SearchSpace::contains(const std::vector<double>& x) const {
    if (x.size() != dims.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] >= dims[i].lo && x[i] <= dims[i].hi)) return false;
    return true;
}

void FalsifyConfig::validate() const {
    if (n_tests < 1) throw ValidationError("n_tests must be at least 1");
    if (runs < 1) throw ValidationError("runs must be at least 1");
    if (!(sim_duration_s >= 0.0) || !std::isfinite(sim_duration_s))
        throw ValidationError("sim_duration_s must be >= 0");
    if (!(samp_time_s > 0.0) || !std::isfinite(samp_time_s)) throw ValidationError("samp_time_s must be > 0");
    if (!(init_temperature > 0.0) || !std::isfinite(init_temperature))
        throw ValidationError("init_temperature must be > 0");
    if (!(cooling > 0.0 && cooling < 1.0)) throw ValidationError("cooling must lie in (0, 1)");
    if (!(proposal_scale > 0.0) || !std::isfinite(proposal_scale))
        throw ValidationError("proposal_scale must be > 0");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Portable draws: the standard distributions are implementation-defined, and
// results must reproduce across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (spare_) {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

std::vector<double> uniform_sample(const SearchSpace& space, Rng& rng) {
    std::vector<double> x;
    for (const auto& d : space.dims) x.push_back(std::min(d.hi, d.lo + (d.hi - d.lo) * rng.uniform01()));
    return x;
}

bool is_point(const SearchSpace& space) {
    for (const auto& d : space.dims)
        if (d.hi > d.lo) return false;
    return true;
}

class Recorder {
public:
    Recorder(const Objective& objective, std::uint64_t seed) : objective_(objective) { result_.seed = seed; }

    double evaluate(const std::vector<double>& x) {
        double r = kInf;
        try {
            r = objective_(x);
            if (std::isnan(r)) r = kInf;
        } catch (const std::exception&) {
            r = kInf;
        }
        if (r < kInf) any_success_ = true;
        result_.history.push_back({x, r});
        ++result_.n_simulations_used;
        if (result_.best_sample.empty() || r < result_.best_robustness) {
            result_.best_robustness = r;
            result_.best_sample = x;
        }
        result_.falsified = result_.best_robustness < 0.0;
        return r;
    }

    FalsificationResult finish() {
        if (!any_success_) throw Error("falsification: every system evaluation failed");
        return std::move(result_);
    }

    bool falsified() const { return result_.falsified; }

private:
    const Objective& objective_;
    FalsificationResult result_;
    bool any_success_ = false;
};

}  // namespace

Objective make_objective(System system, robustness::FormulaPtr formula,
                         std::vector<robustness::LinearPredicate> predicates) {
    return [system = std::move(system), formula = std::move(formula),
            predicates = std::move(predicates)](const std::vector<double>& x) {
        return robustness::robustness(*formula, predicates, system(x));
    };
}

FalsificationResult simulated_annealing(const Objective& objective, const SearchSpace& space,
                                        const FalsifyConfig& config, std::uint64_t seed) {
    space.validate();
    config.validate();
    Rng rng(seed);
    Recorder rec(objective, seed);

    std::vector<double> x = uniform_sample(space, rng);
    double rx = rec.evaluate(x);
    double temperature = config.init_temperature;
    const bool point = is_point(space);

    for (std::size_t k = 1; k < config.n_tests && !point; ++k) {
        if (config.falsification_mode && rec.falsified()) break;
        std::vector<double> y = x;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const auto& d = space.dims[i];
            const double width = d.hi - d.lo;
            if (width <= 0.0) continue;
            y[i] = std::clamp(x[i] + config.proposal_scale * width * rng.normal(), d.lo, d.hi);
        }
        const double ry = rec.evaluate(y);
        const double u = rng.uniform01();
        bool accept = false;
        if (ry <= rx)
            accept = true;
        else if (std::isfinite(ry) && std::isfinite(rx))
            accept = u < std::exp(-(ry - rx) / temperature);
        if (accept) {
            x = std::move(y);
            rx = ry;
        }
        temperature *= config.cooling;
    }
    return rec.finish();
}

FalsificationResult uniform_random_search(const Objective& objective, const SearchSpace& space,
                                          const FalsifyConfig& config, std::uint64_t seed) {
    space.validate();
    config.validate();
    Rng rng(seed);
    Recorder rec(objective, seed);
    for (std::size_t k = 0; k < config.n_tests; ++k) {
        if (config.falsification_mode && rec.falsified()) break;
        rec.evaluate(uniform_sample(space, rng));
    }
    return rec.finish();
}

FalsificationResult falsify(const System& system, const robustness::FormulaPtr& formula,
                            const std::vector<robustness::LinearPredicate>& predicates, const SearchSpace& space,
                            const FalsifyConfig& config) {
    return simulated_annealing(make_objective(system, formula, predicates), space, config, config.seed);
}

std::vector<FalsificationResult> falsify_runs(const Objective& objective, const SearchSpace& space,
                                              const FalsifyConfig& config) {
    config.validate();
    std::vector<FalsificationResult> out;
    for (std::size_t i = 0; i < config.runs; ++i)
        out.push_back(simulated_annealing(objective, space, config, config.seed + i));
    return out;
}

GridResult grid_oracle(const Objective& objective, const SearchSpace& space,
                       const std::vector<std::size_t>& points_per_dim) {
    space.validate();
    if (points_per_dim.size() != space.dims.size())
        throw ValidationError("grid needs one point count per dimension");
    for (auto n : points_per_dim)
        if (n < 1) throw ValidationError("grid point count must be at least 1");

    auto coordinate = [&](std::size_t dim, std::size_t i) {
        const auto& d = space.dims[dim];
        const std::size_t n = points_per_dim[dim];
        if (n == 1) return d.lo;
        if (i + 1 == n) return d.hi;
        return d.lo + (d.hi - d.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };

    GridResult out;
    std::vector<std::size_t> idx(space.dims.size(), 0);
    for (;;) {
        std::vector<double> x;
        for (std::size_t d = 0; d < idx.size(); ++d) x.push_back(coordinate(d, idx[d]));
        double r = kInf;
        try {
            r = objective(x);
        } catch (const std::exception&) {
        }
        if (out.argmin.empty() || r < out.min_robustness) {
            out.min_robustness = r;
            out.argmin = x;
        }
        out.evaluations.push_back({std::move(x), r});

        std::size_t d = idx.size();
        while (d > 0 && ++idx[d - 1] == points_per_dim[d - 1]) idx[--d] = 0;
        if (d == 0) break;
    }
    return out;
}

}  // namespace avtest::falsify
