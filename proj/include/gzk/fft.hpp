#pragma once

#include <complex>
#include <cstddef>

namespace gzk::fft {

using cplx = std::complex<double>;

// Thin layer over FFTW c2c plans with a process-wide plan cache.
//
// Convention: "coefficients" are Fourier-series coefficients, i.e. the raw
// DFT divided by the number of points, stored in wrap-around order. forward()
// produces coefficients from values; backward() sums the series back to
// values (unnormalized inverse DFT). backward() of forward() is identity to
// machine precision.

// 2D transforms on nx*ny arrays, row-major with the y index fastest.
void forward_2d(int nx, int ny, const double* vals, cplx* coeffs);
void backward_2d(int nx, int ny, const cplx* coeffs, double* vals);

// Complex-valued variants (used by padded products and space-time fields).
void forward_2d_c(int nx, int ny, const cplx* in, cplx* out);
void backward_2d_c(int nx, int ny, const cplx* in, cplx* out);

// Batches of 1D complex transforms: `howmany` contiguous series of length n.
// Same normalization as the 2D pair (forward divides by n, backward sums).
void forward_1d_batch(int n, int howmany, const cplx* in, cplx* out);
void backward_1d_batch(int n, int howmany, const cplx* in, cplx* out);

} // namespace gzk::fft
