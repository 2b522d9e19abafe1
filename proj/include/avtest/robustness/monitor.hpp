#pragma once

#include <span>
#include <string>
#include <vector>

#include "avtest/robustness/formula.hpp"
#include "avtest/robustness/predicate.hpp"
#include "avtest/scenario/types.hpp"

namespace avtest::robustness {

// Sampled trace: times in seconds (strictly increasing), states row-major
// with `dim` columns per sample.
struct Trace {
    std::vector<double> times;
    std::size_t dim = 0;
    std::vector<double> states;
    std::vector<std::string> column_names;

    std::size_t size() const { return times.size(); }
    std::span<const double> row(std::size_t i) const { return {states.data() + i * dim, dim}; }
};

// Column 0 must be TIME in milliseconds; it becomes `times` in seconds and
// the remaining columns become the state.
Trace convert_trajectory(const scenario::Trajectory& trajectory);

// Space robustness at times[0], computed bottom-up over the whole trace.
// Temporal windows select samples j >= i with t[j] - t[i] inside the
// interval; unbounded operators reach the end of the trace. An empty window
// yields +inf for Always and -inf for Eventually/Until.
double robustness(const Formula& formula, const std::vector<LinearPredicate>& predicates, const Trace& trace);

// Robustness of the formula evaluated at every sample.
std::vector<double> robustness_signal(const Formula& formula, const std::vector<LinearPredicate>& predicates,
                                      const Trace& trace);

}  // namespace avtest::robustness
