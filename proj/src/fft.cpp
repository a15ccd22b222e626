#include "gzk/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "gzk/kernels.hpp"

namespace gzk::fft {

namespace {

// FFTW planning is not thread-safe and ESTIMATE plans are cheap; cache them
// per shape. Execution uses the new-array interface so one plan serves any
// buffer (plans are created FFTW_UNALIGNED).
struct PlanCache {
    std::mutex mu;
    std::map<std::pair<int, int>, fftw_plan> fwd2d, bwd2d;
    std::map<std::pair<int, int>, fftw_plan> fwd1d, bwd1d;

    fftw_plan get2d(int nx, int ny, int sign) {
        std::lock_guard<std::mutex> lock(mu);
        auto& m = sign == FFTW_FORWARD ? fwd2d : bwd2d;
        auto it = m.find({nx, ny});
        if (it != m.end()) return it->second;
        std::vector<fftw_complex> a(static_cast<std::size_t>(nx) * ny);
        std::vector<fftw_complex> b(static_cast<std::size_t>(nx) * ny);
        fftw_plan p = fftw_plan_dft_2d(nx, ny, a.data(), b.data(), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        m.emplace(std::make_pair(nx, ny), p);
        return p;
    }

    fftw_plan get1d(int n, int howmany, int sign) {
        std::lock_guard<std::mutex> lock(mu);
        auto& m = sign == FFTW_FORWARD ? fwd1d : bwd1d;
        auto it = m.find({n, howmany});
        if (it != m.end()) return it->second;
        std::vector<fftw_complex> a(static_cast<std::size_t>(n) * howmany);
        std::vector<fftw_complex> b(static_cast<std::size_t>(n) * howmany);
        fftw_plan p = fftw_plan_many_dft(1, &n, howmany, a.data(), nullptr, 1, n, b.data(),
                                         nullptr, 1, n, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        m.emplace(std::make_pair(n, howmany), p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

fftw_complex* fc(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* fc(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

} // namespace

void forward_2d_c(int nx, int ny, const cplx* in, cplx* out) {
    fftw_execute_dft(cache().get2d(nx, ny, FFTW_FORWARD), fc(in), fc(out));
    kernels::active().cscal(out, 1.0 / (static_cast<double>(nx) * ny), static_cast<std::size_t>(nx) * ny);
}

void backward_2d_c(int nx, int ny, const cplx* in, cplx* out) {
    fftw_execute_dft(cache().get2d(nx, ny, FFTW_BACKWARD), fc(in), fc(out));
}

void forward_2d(int nx, int ny, const double* vals, cplx* coeffs) {
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    std::vector<cplx> tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = vals[i];
    forward_2d_c(nx, ny, tmp.data(), coeffs);
}

void backward_2d(int nx, int ny, const cplx* coeffs, double* vals) {
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    std::vector<cplx> tmp(n);
    backward_2d_c(nx, ny, coeffs, tmp.data());
    for (std::size_t i = 0; i < n; ++i) vals[i] = tmp[i].real();
}

void forward_1d_batch(int n, int howmany, const cplx* in, cplx* out) {
    fftw_execute_dft(cache().get1d(n, howmany, FFTW_FORWARD), fc(in), fc(out));
    kernels::active().cscal(out, 1.0 / n, static_cast<std::size_t>(n) * howmany);
}

void backward_1d_batch(int n, int howmany, const cplx* in, cplx* out) {
    fftw_execute_dft(cache().get1d(n, howmany, FFTW_BACKWARD), fc(in), fc(out));
}

} // namespace gzk::fft
