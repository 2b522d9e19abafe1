#include "avtest/ca/generator.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "avtest/error.hpp"

namespace avtest::ca {

namespace {

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        out.push_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

void check_strength(const std::vector<ParamSpec>& params, std::size_t strength) {
    if (strength < 1 || strength > params.size())
        throw ValidationError("strength " + std::to_string(strength) + " out of range 1.." +
                              std::to_string(params.size()));
}

// Uncovered-tuple bookkeeping: one flag array per parameter combination,
// indexed by the mixed-radix value index of the tuple.
class CoverageState {
public:
    CoverageState(const std::vector<std::size_t>& domains, std::size_t strength)
        : domains_(domains), combos_(combinations(domains.size(), strength)) {
        for (const auto& c : combos_) {
            std::size_t count = 1;
            for (auto p : c) count *= domains_[p];
            uncovered_.emplace_back(count, true);
            remaining_ += count;
        }
        combos_of_.resize(domains.size());
        for (std::size_t k = 0; k < combos_.size(); ++k)
            for (auto p : combos_[k]) combos_of_[p].push_back(k);
    }

    std::size_t remaining() const { return remaining_; }

    // Newly covered tuples if `param` takes `value`, counting only
    // combinations whose other members are already assigned (-1 = unset).
    std::size_t gain(const std::vector<int>& row, std::size_t param, int value) const {
        std::size_t g = 0;
        for (auto k : combos_of_[param]) {
            std::size_t idx = 0;
            bool complete = true;
            for (auto p : combos_[k]) {
                const int v = p == param ? value : row[p];
                if (v < 0) {
                    complete = false;
                    break;
                }
                idx = idx * domains_[p] + static_cast<std::size_t>(v);
            }
            if (complete && uncovered_[k][idx]) ++g;
        }
        return g;
    }

    std::size_t row_gain(const std::vector<int>& row) const {
        std::size_t g = 0;
        for (std::size_t k = 0; k < combos_.size(); ++k)
            if (uncovered_[k][index(k, row)]) ++g;
        return g;
    }

    void cover(const std::vector<int>& row) {
        for (std::size_t k = 0; k < combos_.size(); ++k) {
            auto flag = uncovered_[k].begin() + static_cast<std::ptrdiff_t>(index(k, row));
            if (*flag) {
                *flag = false;
                --remaining_;
            }
        }
    }

    // Count of uncovered tuples containing (param, value).
    std::size_t pending(std::size_t param, int value) const {
        std::size_t n = 0;
        for (auto k : combos_of_[param]) {
            const auto& c = combos_[k];
            for (std::size_t idx = 0; idx < uncovered_[k].size(); ++idx) {
                if (!uncovered_[k][idx]) continue;
                if (digit(c, idx, param) == static_cast<std::size_t>(value)) ++n;
            }
        }
        return n;
    }

    // Any uncovered tuple, written into `row`.
    void first_uncovered(std::vector<int>& row) const {
        for (std::size_t k = 0; k < combos_.size(); ++k)
            for (std::size_t idx = 0; idx < uncovered_[k].size(); ++idx)
                if (uncovered_[k][idx]) {
                    for (auto p : combos_[k]) row[p] = static_cast<int>(digit(combos_[k], idx, p));
                    return;
                }
    }

private:
    std::size_t index(std::size_t k, const std::vector<int>& row) const {
        std::size_t idx = 0;
        for (auto p : combos_[k]) idx = idx * domains_[p] + static_cast<std::size_t>(row[p]);
        return idx;
    }

    std::size_t digit(const std::vector<std::size_t>& combo, std::size_t idx, std::size_t param) const {
        for (std::size_t i = combo.size(); i-- > 0;) {
            const auto p = combo[i];
            if (p == param) return idx % domains_[p];
            idx /= domains_[p];
        }
        return 0;
    }

    std::vector<std::size_t> domains_;
    std::vector<std::vector<std::size_t>> combos_;
    std::vector<std::vector<std::size_t>> combos_of_;
    std::vector<std::vector<bool>> uncovered_;
    std::size_t remaining_ = 0;
};

std::size_t uniform(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

std::size_t count_tuples(const std::vector<ParamSpec>& params, std::size_t strength) {
    check_strength(params, strength);
    std::size_t total = 0;
    for (const auto& c : combinations(params.size(), strength)) {
        std::size_t n = 1;
        for (auto p : c) n *= params[p].values.size();
        total += n;
    }
    return total;
}

TestTable generate_covering_array(const std::vector<ParamSpec>& params, std::size_t strength,
                                  const GeneratorOptions& options) {
    validate_param_specs(params);
    check_strength(params, strength);

    const std::size_t n = params.size();
    std::vector<std::size_t> domains;
    for (const auto& p : params) domains.push_back(p.values.size());
    CoverageState state(domains, strength);
    std::mt19937_64 rng(options.seed);

    TestTable table;
    for (const auto& p : params) table.parameter_names.push_back(p.name);

    while (state.remaining() > 0) {
        // Seed every candidate with the (param, value) in the most pending tuples.
        std::size_t seed_param = 0;
        int seed_value = 0;
        std::size_t seed_pending = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (int v = 0; v < static_cast<int>(domains[p]); ++v)
                if (auto c = state.pending(p, v); c > seed_pending) {
                    seed_pending = c;
                    seed_param = p;
                    seed_value = v;
                }

        std::vector<int> best;
        std::size_t best_gain = 0;
        for (std::size_t cand = 0; cand < std::max<std::size_t>(1, options.candidates); ++cand) {
            std::vector<int> row(n, -1);
            row[seed_param] = seed_value;
            std::vector<std::size_t> order;
            for (std::size_t p = 0; p < n; ++p)
                if (p != seed_param) order.push_back(p);
            for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform(rng, i)]);

            for (auto p : order) {
                std::vector<int> ties;
                std::size_t top = 0;
                for (int v = 0; v < static_cast<int>(domains[p]); ++v) {
                    const auto g = state.gain(row, p, v);
                    if (ties.empty() || g > top) {
                        top = g;
                        ties.assign(1, v);
                    } else if (g == top) {
                        ties.push_back(v);
                    }
                }
                row[p] = ties[uniform(rng, ties.size())];
            }
            const auto g = state.row_gain(row);
            if (g > best_gain) {
                best_gain = g;
                best = std::move(row);
            }
        }
        if (best_gain == 0) {
            best.assign(n, 0);
            state.first_uncovered(best);
        }
        state.cover(best);
        std::vector<std::string> cells;
        for (std::size_t p = 0; p < n; ++p) cells.push_back(params[p].values[static_cast<std::size_t>(best[p])]);
        table.rows.push_back(std::move(cells));
    }
    return table;
}

std::vector<ValueTuple> verify_coverage(const TestTable& table, const std::vector<ParamSpec>& params,
                                        std::size_t strength) {
    check_strength(params, strength);
    std::vector<std::size_t> column;
    for (const auto& p : params) {
        auto it = std::find(table.parameter_names.begin(), table.parameter_names.end(), p.name);
        if (it == table.parameter_names.end()) throw ValidationError("table has no column '" + p.name + "'");
        column.push_back(static_cast<std::size_t>(it - table.parameter_names.begin()));
    }

    std::vector<ValueTuple> missing;
    for (const auto& combo : combinations(params.size(), strength)) {
        std::vector<std::size_t> digits(strength, 0);
        while (true) {
            const bool covered = std::any_of(table.rows.begin(), table.rows.end(), [&](const auto& row) {
                for (std::size_t i = 0; i < strength; ++i)
                    if (row[column[combo[i]]] != params[combo[i]].values[digits[i]]) return false;
                return true;
            });
            if (!covered) {
                ValueTuple t;
                for (std::size_t i = 0; i < strength; ++i) {
                    t.params.push_back(params[combo[i]].name);
                    t.values.push_back(params[combo[i]].values[digits[i]]);
                }
                missing.push_back(std::move(t));
            }
            std::size_t i = strength;
            while (i > 0 && ++digits[i - 1] == params[combo[i - 1]].values.size()) digits[--i] = 0;
            if (i == 0) break;
        }
    }
    return missing;
}

}  // namespace avtest::ca
