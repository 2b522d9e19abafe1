#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avtest/ca/test_table.hpp"

namespace avtest::ca {

struct GeneratorOptions {
    std::uint64_t seed = 0;
    std::size_t candidates = 50;
};

// Greedy AETG-style construction: each emitted row is the best of
// `candidates` randomized candidates by newly covered t-tuples.
TestTable generate_covering_array(const std::vector<ParamSpec>& params, std::size_t strength,
                                  const GeneratorOptions& options = {});

struct ValueTuple {
    std::vector<std::string> params;
    std::vector<std::string> values;
    bool operator==(const ValueTuple&) const = default;
};

// Brute-force list of t-way value combinations missing from the table.
// Don't-care cells cover nothing.
std::vector<ValueTuple> verify_coverage(const TestTable& table, const std::vector<ParamSpec>& params,
                                        std::size_t strength);

std::size_t count_tuples(const std::vector<ParamSpec>& params, std::size_t strength);

}  // namespace avtest::ca
