#include "gzk/kernels.hpp"

#include <cstdlib>
#include <string>

#include "gzk/error.hpp"

namespace gzk::kernels {

namespace {

const Kernels& select() {
    const char* env = std::getenv("GZK_SIMD");
    std::string want = env ? env : "auto";
#if defined(__x86_64__) || defined(_M_X64)
    if (want == "avx2") {
        if (!avx2_supported())
            fail(ErrorClass::ConfigError, "GZK_SIMD=avx2 requested but CPU lacks AVX2/FMA");
        return avx2();
    }
    if (want == "scalar") return scalar();
    if (want == "auto") return avx2_supported() ? avx2() : scalar();
#else
    if (want == "scalar" || want == "auto") return scalar();
#endif
    fail(ErrorClass::ConfigError, "GZK_SIMD must be one of auto, scalar, avx2 (got '" + want + "')");
}

} // namespace

const Kernels& active() {
    static const Kernels& chosen = select();
    return chosen;
}

} // namespace gzk::kernels
