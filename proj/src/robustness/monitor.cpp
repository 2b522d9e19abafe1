#include "avtest/robustness/monitor.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "avtest/error.hpp"
#include "avtest/kernels/kernels.hpp"
#include "avtest/scenario/trace_dict.hpp"

namespace avtest::robustness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Signal = std::vector<double>;

class Evaluator {
public:
    Evaluator(const std::vector<LinearPredicate>& predicates, const Trace& trace)
        : trace_(trace), k_(kernels::active_kernels()) {
        for (const auto& p : predicates) {
            if (p.A.size() != trace.dim)
                throw ValidationError("predicate '" + p.name + "' has " + std::to_string(p.A.size()) +
                                      " coefficients, trace has " + std::to_string(trace.dim) + " state columns");
            by_name_.emplace(p.name, &p);
        }
    }

    Signal eval(const Formula& f) {
        const std::size_t n = trace_.size();
        switch (f.op) {
            case Op::ATOM: return atom(f.atom);
            case Op::NOT: {
                Signal s = eval(*f.lhs);
                k_.negate(s.data(), n);
                return s;
            }
            case Op::AND: {
                Signal a = eval(*f.lhs);
                const Signal b = eval(*f.rhs);
                k_.elementwise_min(a.data(), b.data(), a.data(), n);
                return a;
            }
            case Op::OR: {
                Signal a = eval(*f.lhs);
                const Signal b = eval(*f.rhs);
                k_.elementwise_max(a.data(), b.data(), a.data(), n);
                return a;
            }
            case Op::IMPLIES: {
                Signal a = eval(*f.lhs);
                const Signal b = eval(*f.rhs);
                k_.negate(a.data(), n);
                k_.elementwise_max(a.data(), b.data(), a.data(), n);
                return a;
            }
            case Op::ALWAYS: return window(eval(*f.lhs), f.interval, true);
            case Op::EVENTUALLY: return window(eval(*f.lhs), f.interval, false);
            case Op::UNTIL: return until(eval(*f.lhs), eval(*f.rhs), f.interval);
        }
        return {};
    }

private:
    Signal atom(const std::string& name) {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) throw ValidationError("unresolved atom '" + name + "'");
        const LinearPredicate& p = *it->second;
        std::vector<std::size_t> cols;
        std::vector<double> coefs;
        for (std::size_t c = 0; c < p.A.size(); ++c) {
            if (p.A[c] == 0.0) continue;
            cols.push_back(c);
            coefs.push_back(p.A[c]);
        }
        Signal s(trace_.size());
        k_.affine_margin(trace_.states.data(), trace_.size(), trace_.dim, cols.data(), coefs.data(), cols.size(), p.b,
                         s.data());
        return s;
    }

    static double pick(double a, double b, bool take_min) {
        if (take_min) return a < b ? a : b;
        return a > b ? a : b;
    }

    // Always (take_min) / Eventually over [t_i + lo, t_i + hi].
    Signal window(const Signal& s, const std::optional<TimeInterval>& interval, bool take_min) const {
        const std::size_t n = s.size();
        const double empty = take_min ? kInf : -kInf;
        Signal r(n);
        if (!interval || (interval->lo == 0.0 && std::isinf(interval->hi))) {
            double acc = empty;
            for (std::size_t i = n; i-- > 0;) {
                acc = pick(s[i], acc, take_min);
                r[i] = acc;
            }
            return r;
        }

        // Monotonic deque; window ends only move forward as i grows.
        const auto& t = trace_.times;
        const double lo = interval->lo, hi = interval->hi;
        auto better = [&](double a, double b) { return take_min ? a <= b : a >= b; };
        std::deque<std::size_t> dq;
        std::size_t next = 0;
        for (std::size_t i = 0; i < n; ++i) {
            while (next < n && t[next] - t[i] <= hi) {
                while (!dq.empty() && better(s[next], s[dq.back()])) dq.pop_back();
                dq.push_back(next++);
            }
            while (!dq.empty() && t[dq.front()] - t[i] < lo) dq.pop_front();
            r[i] = dq.empty() ? empty : s[dq.front()];
        }
        return r;
    }

    Signal until(const Signal& s1, const Signal& s2, const std::optional<TimeInterval>& interval) const {
        const std::size_t n = s1.size();
        Signal r(n);
        if (!interval || (interval->lo == 0.0 && std::isinf(interval->hi))) {
            double next = -kInf;
            for (std::size_t i = n; i-- > 0;) {
                next = pick(s2[i], pick(s1[i], next, true), false);
                r[i] = next;
            }
            return r;
        }
        const auto& t = trace_.times;
        for (std::size_t i = 0; i < n; ++i) {
            double best = -kInf;
            double prefix = kInf;  // min of s1 over [i, j)
            for (std::size_t j = i; j < n && t[j] - t[i] <= interval->hi; ++j) {
                if (t[j] - t[i] >= interval->lo) best = pick(best, pick(s2[j], prefix, true), false);
                prefix = pick(prefix, s1[j], true);
            }
            r[i] = best;
        }
        return r;
    }

    const Trace& trace_;
    const kernels::KernelTable& k_;
    std::map<std::string, const LinearPredicate*> by_name_;
};

void check_trace(const Trace& trace) {
    if (trace.times.empty()) throw ValidationError("trace has no samples");
    if (trace.states.size() != trace.times.size() * trace.dim)
        throw ValidationError("trace state matrix does not match its sample count");
    for (std::size_t i = 1; i < trace.times.size(); ++i)
        if (!(trace.times[i] > trace.times[i - 1])) throw ValidationError("trace times must be strictly increasing");
}

}  // namespace

Trace convert_trajectory(const scenario::Trajectory& trajectory) {
    if (trajectory.columns.empty() || trajectory.columns[0].item_type != scenario::ItemType::TIME)
        throw ValidationError("trajectory column 0 must be TIME");
    Trace trace;
    trace.dim = trajectory.columns.size() - 1;
    for (std::size_t c = 1; c < trajectory.columns.size(); ++c)
        trace.column_names.push_back(scenario::column_name(trajectory.columns[c]));
    trace.times.reserve(trajectory.rows.size());
    trace.states.reserve(trajectory.rows.size() * trace.dim);
    for (const auto& row : trajectory.rows) {
        if (row.size() != trajectory.columns.size()) throw ValidationError("trajectory row width mismatch");
        trace.times.push_back(row[0] / 1000.0);
        trace.states.insert(trace.states.end(), row.begin() + 1, row.end());
    }
    return trace;
}

std::vector<double> robustness_signal(const Formula& formula, const std::vector<LinearPredicate>& predicates,
                                      const Trace& trace) {
    check_trace(trace);
    return Evaluator(predicates, trace).eval(formula);
}

double robustness(const Formula& formula, const std::vector<LinearPredicate>& predicates, const Trace& trace) {
    return robustness_signal(formula, predicates, trace).front();
}

}  // namespace avtest::robustness
