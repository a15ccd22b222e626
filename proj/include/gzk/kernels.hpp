#pragma once

#include <complex>
#include <cstddef>

namespace gzk::kernels {

using cplx = std::complex<double>;

// Hot elementwise/reduction loops used by the spectral pipeline. A table of
// function pointers is selected once at startup: the scalar reference
// implementation always exists; an AVX2+FMA variant is picked on x86-64 when
// the CPU supports it. GZK_SIMD=scalar|avx2|auto overrides the choice.
// Variants are interchangeable up to floating-point reassociation; the test
// suite asserts elementwise and reduction agreement within tight tolerances.
struct Kernels {
    const char* name;

    // dst[i] = a[i] * b[i]
    void (*cmul)(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
    // dst[i] += a[i] * b[i]
    void (*cmul_add)(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
    // dst[i] = src[i]^p for small integer p >= 1
    void (*pow_int)(double* dst, const double* src, int p, std::size_t n);
    // sum of src[i]^2
    double (*sum_sq)(const double* src, std::size_t n);
    // sum of w[i] * |c[i]|^2
    double (*weighted_abs2_sum)(const cplx* c, const double* w, std::size_t n);
    // max of |src[i]|
    double (*max_abs)(const double* src, std::size_t n);
    // dst[i] *= s
    void (*scal)(double* dst, double s, std::size_t n);
    void (*cscal)(cplx* dst, double s, std::size_t n);
};

const Kernels& scalar();

#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2();
bool avx2_supported();
#endif

// Table chosen from CPU detection + GZK_SIMD; stable for process lifetime.
const Kernels& active();

} // namespace gzk::kernels
