// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; dispatch guarantees it only runs on supporting CPUs.

#include "gzk/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <cmath>
#include <immintrin.h>

namespace gzk::kernels {

namespace {

// Two complex doubles per 256-bit lane: [re0 im0 re1 im1].
inline __m256d cmul4(__m256d a, __m256d b) {
    __m256d are = _mm256_movedup_pd(a);        // [re0 re0 re1 re1]
    __m256d aim = _mm256_permute_pd(a, 0xF);   // [im0 im0 im1 im1]
    __m256d bsw = _mm256_permute_pd(b, 0x5);   // [im0 re0 im1 re1]
    return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

void cmul_v(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* pd = reinterpret_cast<double*>(dst);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(pd + 2 * i, cmul4(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_add_v(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* pd = reinterpret_cast<double*>(dst);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d vd = _mm256_loadu_pd(pd + 2 * i);
        _mm256_storeu_pd(pd + 2 * i, _mm256_add_pd(vd, cmul4(va, vb)));
    }
    for (; i < n; ++i) dst[i] += a[i] * b[i];
}

void pow_int_v(double* dst, const double* src, int p, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(src + i);
        __m256d r = x;
        for (int k = 1; k < p; ++k) r = _mm256_mul_pd(r, x);
        _mm256_storeu_pd(dst + i, r);
    }
    for (; i < n; ++i) {
        double x = src[i], r = x;
        for (int k = 1; k < p; ++k) r *= x;
        dst[i] = r;
    }
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_sq_v(const double* src, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d x0 = _mm256_loadu_pd(src + i);
        __m256d x1 = _mm256_loadu_pd(src + i + 4);
        acc0 = _mm256_fmadd_pd(x0, x0, acc0);
        acc1 = _mm256_fmadd_pd(x1, x1, acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += src[i] * src[i];
    return acc;
}

double weighted_abs2_sum_v(const cplx* c, const double* w, std::size_t n) {
    const double* pc = reinterpret_cast<const double*>(c);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d c01 = _mm256_loadu_pd(pc + 2 * i);      // complexes i, i+1
        __m256d c23 = _mm256_loadu_pd(pc + 2 * i + 4);  // complexes i+2, i+3
        __m256d s01 = _mm256_mul_pd(c01, c01);
        __m256d s23 = _mm256_mul_pd(c23, c23);
        // hadd yields [|c0|^2, |c2|^2, |c1|^2, |c3|^2]
        __m256d a2 = _mm256_hadd_pd(s01, s23);
        __m256d wv = _mm256_loadu_pd(w + i);
        wv = _mm256_permute4x64_pd(wv, _MM_SHUFFLE(3, 1, 2, 0)); // [w0 w2 w1 w3]
        acc = _mm256_fmadd_pd(a2, wv, acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) {
        const double re = c[i].real(), im = c[i].imag();
        r += w[i] * (re * re + im * im);
    }
    return r;
}

double max_abs_v(const double* src, std::size_t n) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_and_pd(_mm256_loadu_pd(src + i), mask);
        vm = _mm256_max_pd(vm, x);
    }
    __m128d lo = _mm256_castpd256_pd128(vm);
    __m128d hi = _mm256_extractf128_pd(vm, 1);
    lo = _mm_max_pd(lo, hi);
    double m = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) m = std::max(m, std::fabs(src[i]));
    return m;
}

void scal_v(double* dst, double s, std::size_t n) {
    __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(dst + i), vs));
    for (; i < n; ++i) dst[i] *= s;
}

void cscal_v(cplx* dst, double s, std::size_t n) {
    scal_v(reinterpret_cast<double*>(dst), s, 2 * n);
}

} // namespace

const Kernels& avx2() {
    static const Kernels table = {
        "avx2", cmul_v, cmul_add_v, pow_int_v, sum_sq_v, weighted_abs2_sum_v,
        max_abs_v, scal_v, cscal_v,
    };
    return table;
}

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

} // namespace gzk::kernels

#endif // x86-64
