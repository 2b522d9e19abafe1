#pragma once

// Bulk numeric kernels behind robustness evaluation. Each ISA variant
// produces bit-identical results to the scalar reference: lanes run across
// independent samples, and every lane accumulates terms in the same order as
// the scalar loop. Build flags keep FMA contraction off.

#include <cstddef>
#include <optional>
#include <string_view>

namespace avtest::kernels {

enum class Isa { SCALAR, AVX2 };

struct KernelTable {
    // out[i] = b - sum_k coef[k] * states[i * stride + cols[k]], summed in k order.
    void (*affine_margin)(const double* states, std::size_t rows, std::size_t stride, const std::size_t* cols,
                          const double* coefs, std::size_t nterms, double b, double* out);
    void (*negate)(double* v, std::size_t n);
    // out[i] = a[i] < b[i] ? a[i] : b[i]
    void (*elementwise_min)(const double* a, const double* b, double* out, std::size_t n);
    // out[i] = a[i] > b[i] ? a[i] : b[i]
    void (*elementwise_max)(const double* a, const double* b, double* out, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);

// Best available ISA unless overridden with force_isa (tests, benchmarks).
// AVTEST_FORCE_SCALAR=1 in the environment pins the scalar path.
Isa active_isa();
const KernelTable& active_kernels();
void force_isa(std::optional<Isa> isa);

}  // namespace avtest::kernels
