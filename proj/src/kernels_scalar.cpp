#include "gzk/kernels.hpp"

#include <cmath>

namespace gzk::kernels {

namespace {

void cmul_s(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_add_s(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += a[i] * b[i];
}

void pow_int_s(double* dst, const double* src, int p, std::size_t n) {
    switch (p) {
        case 1:
            for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
            return;
        case 2:
            for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] * src[i];
            return;
        case 3:
            for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] * src[i] * src[i];
            return;
        default:
            for (std::size_t i = 0; i < n; ++i) {
                double x = src[i], r = 1.0;
                for (int k = 0; k < p; ++k) r *= x;
                dst[i] = r;
            }
    }
}

double sum_sq_s(const double* src, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += src[i] * src[i];
    return acc;
}

double weighted_abs2_sum_s(const cplx* c, const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = c[i].real(), im = c[i].imag();
        acc += w[i] * (re * re + im * im);
    }
    return acc;
}

double max_abs_s(const double* src, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(src[i]));
    return m;
}

void scal_s(double* dst, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] *= s;
}

void cscal_s(cplx* dst, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] *= s;
}

} // namespace

const Kernels& scalar() {
    static const Kernels table = {
        "scalar", cmul_s, cmul_add_s, pow_int_s, sum_sq_s, weighted_abs2_sum_s,
        max_abs_s, scal_s, cscal_s,
    };
    return table;
}

} // namespace gzk::kernels
