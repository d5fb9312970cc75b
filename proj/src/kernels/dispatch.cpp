#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "imdd/kernels.hpp"

namespace imdd::kernels {

const char* to_string(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(IMDD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

std::vector<Isa> supported_isas() {
    std::vector<Isa> out{Isa::scalar};
    if (isa_supported(Isa::avx2)) out.push_back(Isa::avx2);
    return out;
}

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::nearest, &scalar::correlate};
#if defined(IMDD_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::nearest, &avx2::correlate};
#endif

const KernelTable& pick() {
    const char* forced = std::getenv("IMDD_ISA");
    if (forced && std::strcmp(forced, "scalar") == 0) return kScalar;
#if defined(IMDD_HAVE_AVX2)
    if (isa_supported(Isa::avx2)) return kAvx2;
#endif
    return kScalar;
}

}  // namespace

const KernelTable& table(Isa isa) {
    if (!isa_supported(isa)) throw std::runtime_error(std::string("ISA not supported: ") + to_string(isa));
#if defined(IMDD_HAVE_AVX2)
    if (isa == Isa::avx2) return kAvx2;
#endif
    return kScalar;
}

const KernelTable& active() {
    static const KernelTable& chosen = pick();
    return chosen;
}

}  // namespace imdd::kernels
