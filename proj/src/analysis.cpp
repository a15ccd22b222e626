#include "gzk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "gzk/bumps.hpp"
#include "gzk/dynamics.hpp"
#include "gzk/error.hpp"
#include "gzk/fft.hpp"
#include "gzk/kernels.hpp"

namespace gzk::analysis {

namespace {

bool dyadic(int n) { return n >= 1 && (n & (n - 1)) == 0; }

int next_pow2(int v) {
    int p = 1;
    while (p < v) p <<= 1;
    return p;
}

double wrap_to(double x, double period) {
    double r = std::fmod(x + 0.5 * period, period);
    if (r < 0.0) r += period;
    return r - 0.5 * period;
}

std::uint64_t mix_u64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t v[3] = {a, b, c};
    const auto* p = reinterpret_cast<const unsigned char*>(v);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < sizeof(v); ++i) h = (h ^ p[i]) * 1099511628211ull;
    return h;
}

} // namespace

double resonance(double xi1, double q1, double xi2, double q2) {
    return 3.0 * xi1 * xi2 * (xi1 + xi2) + xi2 * q1 * q1 + xi1 * q2 * q2 +
           2.0 * (xi1 + xi2) * q1 * q2;
}

double resonance_from_symbol(double xi1, double q1, double xi2, double q2) {
    using dynamics::dispersion_symbol;
    return dispersion_symbol(xi1 + xi2, q1 + q2) - dispersion_symbol(xi1, q1) -
           dispersion_symbol(xi2, q2);
}

std::pair<double, double> second_derivatives_check(double xi, double q, double xi1,
                                                   double q1) {
    const double h = 1e-3 * (1.0 + std::fabs(xi) + std::fabs(q) + std::fabs(xi1) +
                             std::fabs(q1));
    auto along_xi = [&](double a) { return resonance(a, q1, xi - a, q - q1); };
    auto along_q = [&](double a) { return resonance(xi1, a, xi - xi1, q - a); };
    const double dxx = (along_xi(xi1 + h) - 2.0 * along_xi(xi1) + along_xi(xi1 - h)) / (h * h);
    const double dqq = (along_q(q1 + h) - 2.0 * along_q(q1) + along_q(q1 - h)) / (h * h);
    return {dxx, dqq};
}

std::pair<double, double> second_derivatives_closed(double xi) {
    return {-6.0 * xi, -2.0 * xi};
}

double line_soliton_value(int k, double c, double x) {
    const double sech = 1.0 / std::cosh(0.5 * k * std::sqrt(c) * x);
    return std::pow(0.5 * c * (k + 2) * sech * sech, 1.0 / k);
}

Field line_soliton(const Grid& g, int k, double c) {
    if (k < 1) fail(ErrorClass::ConfigError, "nonlinearity order must be >= 1");
    if (!(c > 0.0)) fail(ErrorClass::ConfigError, "soliton speed must be positive");
    const double peak = line_soliton_value(k, c, 0.0);
    if (line_soliton_value(k, c, g.Lx()) > 1e-12 * peak)
        fail(ErrorClass::DomainTooSmall,
             "soliton tail at the x boundary exceeds 1e-12 of the peak");
    return Field::sample(g, [k, c](double x, double) { return line_soliton_value(k, c, x); });
}

double shell_weight(double xi, double q) { return std::sqrt(3.0 * xi * xi + q * q); }

double lp_phi(double r, int N) {
    if (!dyadic(N)) fail(ErrorClass::ConfigError, "shell index must be a dyadic power of two");
    if (N == 1) return bumps::lp_chi(r);
    return bumps::lp_chi(r / N) - bumps::lp_chi(2.0 * r / N);
}

Field project_spatial(const Field& u, int N) {
    const Grid& g = u.grid();
    std::vector<cplx> ch = u.coeffs();
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
            ch[g.mode_index(i, j)] *= lp_phi(shell_weight(g.freq_x(i), g.freq_y(j)), N);
    return Field::from_coeffs(g, std::move(ch));
}

SpaceTimeField free_wave(const Field& phi, int nt, double t0, double window, bool cutoff) {
    if (nt < 4 || nt % 2) fail(ErrorClass::ConfigError, "time grid must be even and >= 4");
    const Grid& g = phi.grid();
    SpaceTimeField u(g, nt, t0, window);
    const std::vector<cplx>& base = phi.coeffs();
    std::vector<cplx> ch(g.size());
    for (int it = 0; it < nt; ++it) {
        const double t = u.time(it);
        for (int i = 0; i < g.nx(); ++i)
            for (int j = 0; j < g.ny(); ++j) {
                const std::size_t idx = g.mode_index(i, j);
                const double w = dynamics::dispersion_symbol(g.freq_x(i), g.freq_y(j));
                ch[idx] = base[idx] * std::polar(1.0, w * t);
            }
        fft::backward_2d(g.nx(), g.ny(), ch.data(), u.slice(it));
        if (cutoff) {
            const double e = bumps::eta_time(t);
            kernels::active().scal(u.slice(it), e, g.size());
        }
    }
    return u;
}

std::vector<cplx> spacetime_spectrum(const SpaceTimeField& u) {
    const Grid& g = u.grid;
    const std::size_t n = g.size();
    std::vector<cplx> slice_c(n);
    std::vector<cplx> rows(static_cast<std::size_t>(u.nt) * n);
    for (int it = 0; it < u.nt; ++it) {
        fft::forward_2d(g.nx(), g.ny(), u.slice(it), slice_c.data());
        for (std::size_t mode = 0; mode < n; ++mode)
            rows[mode * u.nt + it] = slice_c[mode];
    }
    std::vector<cplx> out(rows.size());
    fft::forward_1d_batch(u.nt, static_cast<int>(n), rows.data(), out.data());
    return out;
}

SpaceTimeField spacetime_from_spectrum(const Grid& g, int nt, double t0, double window,
                                       const std::vector<cplx>& spec) {
    const std::size_t n = g.size();
    if (spec.size() != static_cast<std::size_t>(nt) * n)
        fail(ErrorClass::ConfigError, "spectrum size does not match the lattice");
    std::vector<cplx> rows(spec.size());
    fft::backward_1d_batch(nt, static_cast<int>(n), spec.data(), rows.data());
    SpaceTimeField u(g, nt, t0, window);
    std::vector<cplx> slice_c(n);
    for (int it = 0; it < nt; ++it) {
        for (std::size_t mode = 0; mode < n; ++mode) slice_c[mode] = rows[mode * nt + it];
        fft::backward_2d(g.nx(), g.ny(), slice_c.data(), u.slice(it));
    }
    return u;
}

double modulation_limit(const SpaceTimeField& u) { return M_PI * u.nt / u.window; }

namespace {

// Applies fn(mode_weight_sigma) over the spectrum lattice: calls
// fn(mode, m, sigma) for every entry, with sigma the wrapped modulation.
template <class F>
void for_each_lattice(const SpaceTimeField& u, F&& fn) {
    const Grid& g = u.grid;
    const double tau_per = 2.0 * M_PI * u.nt / u.window;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const std::size_t mode = g.mode_index(i, j);
            const double w = dynamics::dispersion_symbol(g.freq_x(i), g.freq_y(j));
            for (int m = 0; m < u.nt; ++m) {
                const int wrapm = m <= u.nt / 2 - 1 ? m : m - u.nt;
                const double tau = 2.0 * M_PI * wrapm / u.window;
                fn(mode, m, wrap_to(tau - w, tau_per));
            }
        }
}

} // namespace

SpaceTimeField project_modulation(const SpaceTimeField& u, int L) {
    if (!dyadic(L)) fail(ErrorClass::ConfigError, "shell index must be a dyadic power of two");
    if (L > modulation_limit(u))
        fail(ErrorClass::ResolutionError,
             "modulation shell exceeds what the tau lattice represents");
    std::vector<cplx> spec = spacetime_spectrum(u);
    for_each_lattice(u, [&](std::size_t mode, int m, double sig) {
        spec[mode * u.nt + m] *= lp_phi(std::sqrt(1.0 + sig * sig), L);
    });
    return spacetime_from_spectrum(u.grid, u.nt, u.t0, u.window, spec);
}

double modulation_low_fraction(const SpaceTimeField& u, int Lmax) {
    if (!dyadic(Lmax))
        fail(ErrorClass::ConfigError, "shell index must be a dyadic power of two");
    const std::vector<cplx> spec = spacetime_spectrum(u);
    double num = 0.0, den = 0.0;
    for_each_lattice(u, [&](std::size_t mode, int m, double sig) {
        const double a2 = std::norm(spec[mode * u.nt + m]);
        const double chi = bumps::lp_chi(std::sqrt(1.0 + sig * sig) / Lmax);
        num += chi * chi * a2;
        den += a2;
    });
    return den > 0.0 ? num / den : 0.0;
}

double xsb_norm(const SpaceTimeField& u, double s, double b) {
    if (!std::isfinite(s) || !std::isfinite(b))
        fail(ErrorClass::ConfigError, "exponents must be finite");
    const Grid& g = u.grid;
    const std::vector<cplx> spec = spacetime_spectrum(u);
    double acc = 0.0;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const double xi = g.freq_x(i), q = g.freq_y(j);
            const double sob = std::pow(1.0 + xi * xi + q * q, s);
            const double w = dynamics::dispersion_symbol(xi, q);
            const std::size_t mode = g.mode_index(i, j);
            const double tau_per = 2.0 * M_PI * u.nt / u.window;
            for (int m = 0; m < u.nt; ++m) {
                const int wrapm = m <= u.nt / 2 - 1 ? m : m - u.nt;
                const double sig = wrap_to(2.0 * M_PI * wrapm / u.window - w, tau_per);
                acc += sob * std::pow(1.0 + sig * sig, b) * std::norm(spec[mode * u.nt + m]);
            }
        }
    return std::sqrt(g.area() * u.window * acc);
}

double spacetime_l4(const SpaceTimeField& u) {
    const std::size_t n = u.grid.size();
    std::vector<double> sq(n);
    double acc = 0.0;
    for (int it = 0; it < u.nt; ++it) {
        kernels::active().pow_int(sq.data(), u.slice(it), 2, n);
        acc += kernels::active().sum_sq(sq.data(), n);
    }
    return std::pow(acc * u.grid.cell_area() * u.dt(), 0.25);
}

ShellModes shell_modes(int N, double Lx) {
    if (!dyadic(N)) fail(ErrorClass::ConfigError, "shell index must be a dyadic power of two");
    if (!(Lx > 0.0)) fail(ErrorClass::ConfigError, "Lx must be positive");
    const double lo = N == 1 ? 0.0 : 0.625 * N;
    const double hi = 1.6 * N;
    const int jmax = static_cast<int>(std::floor(hi / std::sqrt(3.0) / (M_PI / Lx))) + 1;
    const int mmax = static_cast<int>(std::floor(hi / (2.0 * M_PI))) + 1;
    ShellModes sm;
    sm.N = N;
    for (int j = -jmax; j <= jmax; ++j)
        for (int m = -mmax; m <= mmax; ++m) {
            const double r = shell_weight(M_PI * j / Lx, 2.0 * M_PI * m);
            if (r >= lo && r <= hi) {
                sm.j.push_back(j);
                sm.m.push_back(m);
            }
        }
    if (sm.j.empty()) fail(ErrorClass::ResolutionError, "shell contains no lattice modes");
    return sm;
}

std::vector<cplx> shell_phases(const ShellModes& sm, std::uint64_t seed, int trial) {
    const std::size_t nm = sm.j.size();
    std::mt19937_64 rng(mix_u64(seed, static_cast<std::uint64_t>(sm.N),
                                static_cast<std::uint64_t>(trial)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> phase(nm);
    for (auto& p : phase) p = 2.0 * M_PI * unif(rng);

    std::map<std::pair<int, int>, std::size_t> where;
    for (std::size_t i = 0; i < nm; ++i) where[{sm.j[i], sm.m[i]}] = i;
    std::vector<cplx> c(nm);
    std::vector<bool> done(nm, false);
    for (std::size_t i = 0; i < nm; ++i) {
        if (done[i]) continue;
        const auto it = where.find({-sm.j[i], -sm.m[i]});
        if (it != where.end() && it->second != i) {
            c[i] = std::polar(1.0, phase[i]);
            c[it->second] = std::conj(c[i]);
            done[it->second] = true;
        } else {
            c[i] = 1.0; // self-conjugate (DC) mode must stay real
        }
        done[i] = true;
    }
    return c;
}

TrialNorms trial_norms(const ShellModes& sm, const std::vector<cplx>& c, double Lx, int nt,
                       double s, double b) {
    const std::size_t nm = sm.j.size();
    if (c.size() != nm) fail(ErrorClass::ConfigError, "phase array does not match the shell");
    if (nt < 4 || nt % 2) fail(ErrorClass::ConfigError, "time grid must be even and >= 4");
    const double window = 4.0, t0 = -2.0;
    std::vector<double> xi(nm), q(nm), w(nm);
    int jmax = 0, mmax = 0;
    for (std::size_t i = 0; i < nm; ++i) {
        xi[i] = M_PI * sm.j[i] / Lx;
        q[i] = 2.0 * M_PI * sm.m[i];
        w[i] = dynamics::dispersion_symbol(xi[i], q[i]);
        jmax = std::max(jmax, std::abs(sm.j[i]));
        mmax = std::max(mmax, std::abs(sm.m[i]));
    }
    std::vector<double> t(nt), eta(nt);
    for (int it = 0; it < nt; ++it) {
        t[it] = t0 + window * it / nt;
        eta[it] = bumps::eta_time(t[it]);
    }

    // Modulation factor per mode: time spectrum of eta(t) exp(i w t).
    std::vector<cplx> rows(nm * static_cast<std::size_t>(nt)), tf(rows.size());
    for (std::size_t i = 0; i < nm; ++i)
        for (int it = 0; it < nt; ++it)
            rows[i * nt + it] = eta[it] * std::polar(1.0, w[i] * t[it]);
    fft::forward_1d_batch(nt, static_cast<int>(nm), rows.data(), tf.data());

    const double tau_per = 2.0 * M_PI * nt / window;
    double acc = 0.0;
    for (std::size_t i = 0; i < nm; ++i) {
        const double sob = std::pow(1.0 + xi[i] * xi[i] + q[i] * q[i], s) * std::norm(c[i]);
        for (int m = 0; m < nt; ++m) {
            const int wrapm = m <= nt / 2 - 1 ? m : m - nt;
            const double sig = wrap_to(2.0 * M_PI * wrapm / window - w[i], tau_per);
            acc += sob * std::pow(1.0 + sig * sig, b) * std::norm(tf[i * nt + m]);
        }
    }
    TrialNorms out;
    out.xsb = std::sqrt(2.0 * Lx * window * acc);

    // L^4: embed the shell modes on a grid oversampling the quartic product.
    const int MX = next_pow2(std::max(4 * jmax + 4, 8));
    const int MY = next_pow2(std::max(4 * mmax + 4, 8));
    const std::size_t big = static_cast<std::size_t>(MX) * MY;
    const double dA = (2.0 * Lx / MX) * (1.0 / MY);
    std::vector<cplx> A(big);
    std::vector<double> uu(big), sq(big);
    double l4acc = 0.0;
    for (int it = 0; it < nt; ++it) {
        if (eta[it] == 0.0) continue;
        std::fill(A.begin(), A.end(), cplx(0.0));
        for (std::size_t i = 0; i < nm; ++i) {
            const int jj = ((sm.j[i] % MX) + MX) % MX;
            const int mm = ((sm.m[i] % MY) + MY) % MY;
            A[static_cast<std::size_t>(jj) * MY + mm] +=
                c[i] * eta[it] * std::polar(1.0, w[i] * t[it]);
        }
        fft::backward_2d(MX, MY, A.data(), uu.data());
        kernels::active().pow_int(sq.data(), uu.data(), 2, big);
        l4acc += kernels::active().sum_sq(sq.data(), big) * dA;
    }
    out.l4 = std::pow(l4acc * (window / nt), 0.25);
    return out;
}

ProbeReport strichartz_ratio_scan(std::uint64_t seed, const std::vector<int>& scales,
                                  int trials, double s, double b, int nt, double Lx) {
    if (trials < 1) fail(ErrorClass::ConfigError, "trials must be >= 1");
    if (scales.empty()) fail(ErrorClass::ConfigError, "scan needs at least one scale");
    ProbeReport rep;
    rep.s = s;
    rep.b = b;
    rep.trials = trials;
    rep.seed = seed;
    rep.nt = nt;
    for (int N : scales) {
        const ShellModes sm = shell_modes(N, Lx);
        ScaleStat st;
        st.N = N;
        double sum = 0.0;
        for (int tr = 0; tr < trials; ++tr) {
            const std::vector<cplx> c = shell_phases(sm, seed, tr);
            const TrialNorms tn = trial_norms(sm, c, Lx, nt, s, b);
            if (!(tn.xsb > 0.0)) fail(ErrorClass::NonFinite, "degenerate trial norm");
            const double r = tn.l4 / tn.xsb;
            st.max_ratio = std::max(st.max_ratio, r);
            sum += r;
        }
        st.mean_ratio = sum / trials;
        rep.per_scale.push_back(st);
    }
    if (rep.per_scale.size() >= 2) {
        double xb = 0.0, yb = 0.0;
        for (const auto& st : rep.per_scale) {
            xb += std::log(static_cast<double>(st.N));
            yb += std::log(st.max_ratio);
        }
        xb /= rep.per_scale.size();
        yb /= rep.per_scale.size();
        double sxx = 0.0, sxy = 0.0;
        for (const auto& st : rep.per_scale) {
            const double dx = std::log(static_cast<double>(st.N)) - xb;
            sxx += dx * dx;
            sxy += dx * (std::log(st.max_ratio) - yb);
        }
        rep.slope = sxy / sxx;
    }
    return rep;
}

} // namespace gzk::analysis
