#include "gzk/groundstate.hpp"

#include <cmath>
#include <string>

#include "gzk/error.hpp"
#include "gzk/fft.hpp"
#include "gzk/kernels.hpp"

namespace gzk::groundstate {

namespace {

std::vector<double> helmholtz_weights(const Grid& g) {
    std::vector<double> k2(g.size());
    for (int i = 0; i < g.nx(); ++i) {
        const double xi2 = g.freq_x(i) * g.freq_x(i);
        for (int j = 0; j < g.ny(); ++j)
            k2[static_cast<std::size_t>(i) * g.ny() + j] = xi2 + g.freq_y(j) * g.freq_y(j);
    }
    return k2;
}

} // namespace

GroundState petviashvili_solve(int k, double L, int N, double tol, int max_iter) {
    if (k < 1) fail(ErrorClass::ConfigError, "nonlinearity power k must be >= 1");
    if (!(tol > 0.0)) fail(ErrorClass::ConfigError, "tolerance must be positive");
    const Grid g = Grid::plane(L, N);
    const std::vector<double> k2 = helmholtz_weights(g);
    const std::size_t n = g.size();
    const double gamma = static_cast<double>(k + 1) / k;

    std::vector<double> q(n);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            q[static_cast<std::size_t>(i) * N + j] =
                3.0 * std::exp(-(g.x(i) * g.x(i) + g.y(j) * g.y(j)));

    // The power Q^{k+1} is evaluated on a padded grid so the iteration
    // converges to the fixed point of the *dealiased* discrete equation; with
    // an aliased product the k = 3, 4 profiles are peaked enough that alias
    // leakage at N = 512 caps the attainable residual near 1e-8.
    const int M = (k + 3) / 2 * N;
    const std::size_t nM = static_cast<std::size_t>(M) * M;
    std::vector<cplx> qh(n), qph(n), bigh(nM);
    std::vector<double> bigv(nM), bigp(nM);
    const auto& K = kernels::active();
    auto dealiased_pow = [&](const std::vector<cplx>& in_h, std::vector<cplx>& out_h) {
        pad_coeffs(N, N, in_h.data(), M, M, bigh.data());
        fft::backward_2d(M, M, bigh.data(), bigv.data());
        K.pow_int(bigp.data(), bigv.data(), k + 1, nM);
        fft::forward_2d(M, M, bigp.data(), bigh.data());
        truncate_coeffs(M, M, bigh.data(), N, N, out_h.data());
    };

    fft::forward_2d(N, N, q.data(), qh.data());
    dealiased_pow(qh, qph);
    int it = 0;
    for (; it < max_iter; ++it) {
        // S = <(1-d)Q, Q> / <Q^{k+1}, Q>; the area factor cancels in the
        // ratio so plain coefficient sums suffice.
        double num = 0.0;
        for (std::size_t i = 0; i < n; ++i) num += (k2[i] + 1.0) * std::norm(qh[i]);
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            den += qph[i].real() * qh[i].real() + qph[i].imag() * qh[i].imag();

        const double S = num / den;
        if (!std::isfinite(S) || S <= 0.0)
            fail(ErrorClass::NoConvergence, "degenerate Petviashvili iterate (factor " +
                                                std::to_string(S) + ")");
        const double Sg = std::pow(S, gamma);
        for (std::size_t i = 0; i < n; ++i) qh[i] = Sg * qph[i] / (k2[i] + 1.0);
        fft::backward_2d(N, N, qh.data(), q.data());

        const double supq = K.max_abs(q.data(), n);
        if (!std::isfinite(supq) || supq > 1e8 || supq < 1e-8)
            fail(ErrorClass::NoConvergence, "degenerate Petviashvili iterate (sup " +
                                                std::to_string(supq) + ")");

        // Relative L2 residual of dQ - Q + Q^{k+1} for the updated iterate;
        // its dealiased power feeds the next pass.
        dealiased_pow(qh, qph);
        double res2 = 0.0, nq2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            res2 += std::norm(-(k2[i] + 1.0) * qh[i] + qph[i]);
            nq2 += std::norm(qh[i]);
        }
        if (std::sqrt(res2) < tol * std::sqrt(nq2)) break;
    }
    if (it == max_iter)
        fail(ErrorClass::NoConvergence,
             "Petviashvili did not reach tol in " + std::to_string(max_iter) + " iterations");

    GroundState gs{k, Field::from_values(g, std::move(q)), 0, 0, 0, 0, 0, 0};
    gs.iterations = it + 1;
    gs.mass_sq = gs.profile.l2_sq();
    gs.grad_sq = gs.profile.grad_sq();
    gs.potential = gs.profile.integral_power(k + 2);
    gs.sharp_constant = sharp_constant(k, gs.mass_sq);

    // Independent residual: dealiased power, Field pipeline.
    Field res = gs.profile.dealiased_power(k + 1);
    {
        auto& rc = res.mut_coeffs();
        const auto& qc = gs.profile.coeffs();
        for (std::size_t i = 0; i < n; ++i) rc[i] -= (k2[i] + 1.0) * qc[i];
    }
    gs.residual = std::sqrt(res.l2_sq());
    return gs;
}

double sharp_constant(int k, double mass_sq) {
    return std::pow(2.0, 0.5 * (k - 2)) * (k + 2) /
           (std::pow(static_cast<double>(k), 0.5 * k) * std::pow(mass_sq, 0.5 * k));
}

double gn_functional(const Field& f, int k) {
    const double m = f.l2_sq();
    const double gsq = f.grad_sq();
    if (m == 0.0 || gsq == 0.0) return 0.0;
    return f.integral_abs_power(k + 2) / (m * std::pow(gsq, 0.5 * k));
}

ReferenceQuantities reference_quantities(const GroundState& gs) {
    if (gs.k < 2) fail(ErrorClass::ConfigError, "reference quantities need k >= 2");
    const int k = gs.k;
    ReferenceQuantities r;
    r.s_k = static_cast<double>(k - 2) / k;
    const double M = gs.mass_sq;
    r.HQ_MQ = std::pow(0.25 * (k - 2), r.s_k) * M;
    r.gradQ_Q = std::pow(0.5 * k, 0.5 * r.s_k) * std::sqrt(M);
    const double H_raw = 0.5 * gs.grad_sq - gs.potential / (k + 2);
    r.HQ_MQ_raw = std::pow(H_raw, r.s_k) * std::pow(M, 1.0 - r.s_k);
    r.gradQ_Q_raw = std::pow(gs.grad_sq, 0.5 * r.s_k) * std::pow(M, 0.5 * (1.0 - r.s_k));
    return r;
}

RadialProfile::RadialProfile(const GroundState& gs) {
    const Grid& g = gs.profile.grid();
    const int N = g.nx();
    const int up = 8, M = up * N;

    // Central row (y = 0) as a periodic 1D signal, spectrally upsampled.
    std::vector<cplx> row(N), rowh(N), dense_h(M, cplx(0.0)), dense(M);
    const auto& vals = gs.profile.values();
    for (int i = 0; i < N; ++i) row[i] = vals[static_cast<std::size_t>(i) * N + N / 2];
    fft::forward_1d_batch(N, 1, row.data(), rowh.data());
    for (int j = 0; j < N / 2; ++j) dense_h[j] = rowh[j];
    for (int j = N / 2; j < N; ++j) dense_h[j + (M - N)] = rowh[j];
    fft::backward_1d_batch(M, 1, dense_h.data(), dense.data());

    // Radial nodes r_j = j*dr from the x >= 0 half, starting at the center.
    const int nn = M / 2;
    dr_ = 2.0 * g.Lx() / M;
    r_max_ = dr_ * (nn - 1);
    v_.resize(nn);
    for (int j = 0; j < nn; ++j) v_[j] = dense[M / 2 + j].real();

    // Natural cubic spline on the uniform nodes (Thomas algorithm).
    d2_.assign(nn, 0.0);
    std::vector<double> cdiag(nn, 0.0), rhs(nn, 0.0);
    for (int i = 1; i + 1 < nn; ++i)
        rhs[i] = 6.0 * (v_[i + 1] - 2.0 * v_[i] + v_[i - 1]) / (dr_ * dr_);
    for (int i = 1; i + 1 < nn; ++i) {
        const double m = 4.0 - (i > 1 ? 1.0 / cdiag[i - 1] : 0.0);
        cdiag[i] = m;
        rhs[i] -= (i > 1 ? rhs[i - 1] / cdiag[i - 1] : 0.0);
    }
    for (int i = nn - 2; i >= 1; --i)
        d2_[i] = (rhs[i] - (i + 1 < nn - 1 ? d2_[i + 1] : 0.0)) / cdiag[i];
}

double RadialProfile::operator()(double r) const {
    if (r < 0.0) r = -r;
    if (r >= r_max_) return 0.0;
    const int i = static_cast<int>(r / dr_);
    const double a = (r - i * dr_) / dr_;
    const double b = 1.0 - a;
    return b * v_[i] + a * v_[i + 1] +
           dr_ * dr_ / 6.0 * ((b * b * b - b) * d2_[i] + (a * a * a - a) * d2_[i + 1]);
}

} // namespace gzk::groundstate
