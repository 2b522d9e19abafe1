#include <atomic>
#include <cstdlib>
#include <string>

#include "avtest/kernels/kernels.hpp"

namespace avtest::kernels {

#ifndef AVTEST_HAS_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

namespace {

// -1: no override
std::atomic<int> forced{-1};

Isa detect() {
    if (const char* env = std::getenv("AVTEST_FORCE_SCALAR"); env && std::string(env) == "1") return Isa::SCALAR;
    return avx2_kernels() ? Isa::AVX2 : Isa::SCALAR;
}

}  // namespace

bool isa_available(Isa isa) { return isa == Isa::SCALAR || avx2_kernels() != nullptr; }

std::string_view isa_name(Isa isa) { return isa == Isa::AVX2 ? "avx2" : "scalar"; }

Isa active_isa() {
    const int f = forced.load();
    if (f >= 0) return static_cast<Isa>(f);
    static const Isa detected = detect();
    return detected;
}

const KernelTable& active_kernels() {
    if (active_isa() == Isa::AVX2) {
        if (const auto* t = avx2_kernels()) return *t;
    }
    return scalar_kernels();
}

void force_isa(std::optional<Isa> isa) {
    if (isa && !isa_available(*isa)) return;
    forced = isa ? static_cast<int>(*isa) : -1;
}

}  // namespace avtest::kernels
