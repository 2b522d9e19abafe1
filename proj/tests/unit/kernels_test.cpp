#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "avtest/kernels/kernels.hpp"
#include "generators.hpp"

using namespace avtest::kernels;
using avtest::testing::Rng;
using avtest::testing::uniform;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
    return true;
}

std::vector<double> awkward_values(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) {
        switch (rng() % 6) {
            case 0: x = 0.0; break;
            case 1: x = -0.0; break;
            case 2: x = std::numeric_limits<double>::infinity() * (rng() % 2 ? 1 : -1); break;
            default: x = uniform(rng, -1e3, 1e3);
        }
    }
    return v;
}

}  // namespace

TEST(Kernels, ScalarAndAvx2AreBitwiseIdentical) {
    const KernelTable* simd = avx2_kernels();
    if (!simd) GTEST_SKIP() << "AVX2 not available";
    const KernelTable& ref = scalar_kernels();
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = rng() % 37, stride = 1 + rng() % 6;
        std::vector<double> states(rows * stride);
        for (auto& s : states) s = uniform(rng, -100, 100) / 7.0;
        std::vector<std::size_t> cols;
        std::vector<double> coefs;
        for (std::size_t k = 0, n = rng() % 5; k < n; ++k) {
            cols.push_back(rng() % stride);
            coefs.push_back(uniform(rng, -3, 3));
        }
        const double b = uniform(rng, -10, 10);
        std::vector<double> o1(rows), o2(rows);
        ref.affine_margin(states.data(), rows, stride, cols.data(), coefs.data(), cols.size(), b, o1.data());
        simd->affine_margin(states.data(), rows, stride, cols.data(), coefs.data(), cols.size(), b, o2.data());
        ASSERT_TRUE(bitwise_equal(o1, o2)) << trial;

        auto a = awkward_values(rng, rows), c = awkward_values(rng, rows);
        std::vector<double> m1(rows), m2(rows);
        ref.elementwise_min(a.data(), c.data(), m1.data(), rows);
        simd->elementwise_min(a.data(), c.data(), m2.data(), rows);
        ASSERT_TRUE(bitwise_equal(m1, m2));
        ref.elementwise_max(a.data(), c.data(), m1.data(), rows);
        simd->elementwise_max(a.data(), c.data(), m2.data(), rows);
        ASSERT_TRUE(bitwise_equal(m1, m2));
        auto n1 = a, n2 = a;
        ref.negate(n1.data(), rows);
        simd->negate(n2.data(), rows);
        ASSERT_TRUE(bitwise_equal(n1, n2));
    }
}

TEST(Kernels, ForceIsaOverridesDispatch) {
    force_isa(Isa::SCALAR);
    EXPECT_EQ(active_isa(), Isa::SCALAR);
    EXPECT_EQ(&active_kernels(), &scalar_kernels());
    force_isa(std::nullopt);
    if (isa_available(Isa::AVX2) && !std::getenv("AVTEST_FORCE_SCALAR")) {
        EXPECT_EQ(active_isa(), Isa::AVX2);
    }
    EXPECT_EQ(isa_name(Isa::SCALAR), "scalar");
}
