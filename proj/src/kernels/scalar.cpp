#include "avtest/kernels/kernels.hpp"

namespace avtest::kernels {

namespace {

void affine_margin(const double* states, std::size_t rows, std::size_t stride, const std::size_t* cols,
                   const double* coefs, std::size_t nterms, double b, double* out) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* x = states + i * stride;
        double acc = 0.0;
        for (std::size_t k = 0; k < nterms; ++k) acc = acc + coefs[k] * x[cols[k]];
        out[i] = b - acc;
    }
}

void negate(double* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) v[i] = -v[i];
}

void elementwise_min(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void elementwise_max(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{affine_margin, negate, elementwise_min, elementwise_max};
    return table;
}

}  // namespace avtest::kernels
