#include "gzk/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "gzk/analysis.hpp"
#include "gzk/error.hpp"
#include "gzk/fft.hpp"
#include "gzk/functionals.hpp"
#include "gzk/kernels.hpp"
#include "gzk/snapshot.hpp"

namespace gzk::dynamics {

Field linear_propagate(const Field& u, double t) {
    const Grid& g = u.grid();
    std::vector<cplx> ch = u.coeffs();
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const double w = dispersion_symbol(g.freq_x(i), g.freq_y(j));
            ch[g.mode_index(i, j)] *= std::polar(1.0, w * t);
        }
    return Field::from_coeffs(g, std::move(ch));
}

void nonlinear_rhs(const Grid& g, int k, int sign, const cplx* uh, cplx* out,
                   double* sup_linf) {
    const int nx = g.nx(), ny = g.ny();
    const int factor = (k + 3) / 2;
    const int mx = factor * nx, my = factor * ny;
    const std::size_t big_n = static_cast<std::size_t>(mx) * my;
    std::vector<cplx> big(big_n);
    std::vector<double> u(big_n), up(big_n);
    pad_coeffs(nx, ny, uh, mx, my, big.data());
    fft::backward_2d(mx, my, big.data(), u.data());
    if (sup_linf) *sup_linf = kernels::active().max_abs(u.data(), big_n);
    kernels::active().pow_int(up.data(), u.data(), k + 1, big_n);
    fft::forward_2d(mx, my, up.data(), big.data());
    truncate_coeffs(mx, my, big.data(), nx, ny, out);
    const double s = -static_cast<double>(sign);
    for (int i = 0; i < nx; ++i) {
        const cplx ixi(0.0, s * g.freq_x(i));
        cplx* row = out + static_cast<std::size_t>(i) * ny;
        for (int j = 0; j < ny; ++j) row[j] *= ixi;
    }
}

EtdRk4::EtdRk4(const Grid& g, int k, int sign, double dt)
    : grid_(g), k_(k), sign_(sign), dt_(dt) {
    if (k < 1) fail(ErrorClass::ConfigError, "nonlinearity order must be >= 1");
    if (sign != 1 && sign != -1) fail(ErrorClass::ConfigError, "sign must be +1 or -1");
    if (!(dt > 0.0)) fail(ErrorClass::ConfigError, "dt must be positive");
    const std::size_t n = g.size();
    E_.resize(n);
    E2_.resize(n);
    Q_.resize(n);
    f1_.resize(n);
    f2_.resize(n);
    f3_.resize(n);
    n0_.resize(n);
    na_.resize(n);
    nb_.resize(n);
    nc_.resize(n);
    a_.resize(n);
    b_.resize(n);
    c_.resize(n);

    // Contour points for the phi-function averages near z = 0. The symbol is
    // purely imaginary, so the full unit circle is used and the mean is kept
    // complex (the half-circle/real-part shortcut only applies to real
    // symbols).
    constexpr int M = 64;
    cplx ring[M];
    for (int m = 0; m < M; ++m)
        ring[m] = std::polar(1.0, 2.0 * M_PI * (m + 0.5) / M);

    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const std::size_t idx = g.mode_index(i, j);
            const double w = dispersion_symbol(g.freq_x(i), g.freq_y(j));
            const cplx z(0.0, w * dt);
            E_[idx] = std::exp(z);
            E2_[idx] = std::exp(0.5 * z);
            if (std::abs(z) >= 0.5) {
                const cplx ez = E_[idx], z2 = z * z, z3 = z2 * z;
                Q_[idx] = dt * (E2_[idx] - 1.0) / z;
                f1_[idx] = dt * (-4.0 - z + ez * (4.0 - 3.0 * z + z2)) / z3;
                f2_[idx] = dt * (2.0 + z + ez * (-2.0 + z)) / z3;
                f3_[idx] = dt * (-4.0 - 3.0 * z - z2 + ez * (4.0 - z)) / z3;
            } else {
                cplx q(0), g1(0), g2(0), g3(0);
                for (int m = 0; m < M; ++m) {
                    const cplx s = z + ring[m];
                    const cplx es = std::exp(s), es2 = std::exp(0.5 * s);
                    const cplx s2 = s * s, s3 = s2 * s;
                    q += (es2 - 1.0) / s;
                    g1 += (-4.0 - s + es * (4.0 - 3.0 * s + s2)) / s3;
                    g2 += (2.0 + s + es * (-2.0 + s)) / s3;
                    g3 += (-4.0 - 3.0 * s - s2 + es * (4.0 - s)) / s3;
                }
                const double sc = dt / M;
                Q_[idx] = sc * q;
                f1_[idx] = sc * g1;
                f2_[idx] = sc * g2;
                f3_[idx] = sc * g3;
            }
        }
}

double EtdRk4::step(cplx* uh) {
    const std::size_t n = grid_.size();
    double sup = 0.0;
    nonlinear_rhs(grid_, k_, sign_, uh, n0_.data(), &sup);
    for (std::size_t i = 0; i < n; ++i) a_[i] = E2_[i] * uh[i] + Q_[i] * n0_[i];
    nonlinear_rhs(grid_, k_, sign_, a_.data(), na_.data());
    for (std::size_t i = 0; i < n; ++i) b_[i] = E2_[i] * uh[i] + Q_[i] * na_[i];
    nonlinear_rhs(grid_, k_, sign_, b_.data(), nb_.data());
    for (std::size_t i = 0; i < n; ++i)
        c_[i] = E2_[i] * a_[i] + Q_[i] * (2.0 * nb_[i] - n0_[i]);
    nonlinear_rhs(grid_, k_, sign_, c_.data(), nc_.data());
    for (std::size_t i = 0; i < n; ++i)
        uh[i] = E_[i] * uh[i] + f1_[i] * n0_[i] + 2.0 * f2_[i] * (na_[i] + nb_[i]) +
                f3_[i] * nc_[i];
    return sup;
}

void SimConfig::validate() const {
    if (k < 1) fail(ErrorClass::ConfigError, "nonlinearity order must be >= 1");
    if (sign != 1 && sign != -1) fail(ErrorClass::ConfigError, "sign must be +1 or -1");
    if (!(Lx > 0.0)) fail(ErrorClass::ConfigError, "Lx must be positive");
    if (nx < 4 || ny < 4 || nx % 2 || ny % 2)
        fail(ErrorClass::ConfigError, "grid sizes must be even and >= 4");
    if (!(dt > 0.0) || !(t_end > 0.0))
        fail(ErrorClass::ConfigError, "dt and t_end must be positive");
    if (snapshot_stride < 0 || diagnostics_stride < 0)
        fail(ErrorClass::ConfigError, "strides must be >= 0");
    if (!(linf_halt > 0.0)) fail(ErrorClass::ConfigError, "linf_halt must be positive");
    nsteps();
}

long long SimConfig::nsteps() const {
    const long long n = std::llround(t_end / dt);
    if (n < 1 || std::fabs(n * dt - t_end) > 1e-9 * std::max(1.0, std::fabs(t_end)))
        fail(ErrorClass::ConfigError, "t_end must be an integer multiple of dt");
    return n;
}

Field step_etdrk4(const Field& u, const SimConfig& cfg) {
    cfg.validate();
    EtdRk4 stepper(u.grid(), cfg.k, cfg.sign, cfg.dt);
    std::vector<cplx> ch = u.coeffs();
    stepper.step(ch.data());
    Field out = Field::from_coeffs(u.grid(), std::move(ch));
    if (!out.finite()) fail(ErrorClass::NonFinite, "integrator produced a non-finite state");
    return out;
}

namespace {

DiagnosticsRow make_row(long long step, double t, const Field& u, int k, int sign,
                        double c_kt, double mass0) {
    DiagnosticsRow r;
    r.step = step;
    r.t = t;
    r.mass = u.l2_sq();
    r.energy = functionals::energy(u, k, sign);
    r.grad_norm_sq = u.grad_sq();
    r.linf = u.sup();
    r.X_t = r.grad_norm_sq + c_kt * mass0;
    return r;
}

} // namespace

EvolveResult evolve(const Field& u0, const SimConfig& cfg) {
    cfg.validate();
    const Grid& g = u0.grid();
    if (g.nx() != cfg.nx || g.ny() != cfg.ny || std::fabs(g.Lx() - cfg.Lx) > 1e-12)
        fail(ErrorClass::ConfigError, "initial data grid does not match the configuration");
    const long long n = cfg.nsteps();
    const bool snaps = cfg.snapshot_stride > 0 && !cfg.out_dir.empty();
    if (snaps) std::filesystem::create_directories(cfg.out_dir);
    auto snap_path = [&](long long s) {
        return cfg.out_dir + "/snap_" + std::to_string(s) + ".gzkf";
    };

    EvolveResult res{u0, 0.0, 0, false, "", {}};
    const double mass0 = u0.l2_sq();
    res.diagnostics.push_back(make_row(0, 0.0, u0, cfg.k, cfg.sign, cfg.c_kt, mass0));
    if (snaps) write_snapshot(snap_path(0), u0, 0.0);

    EtdRk4 stepper(g, cfg.k, cfg.sign, cfg.dt);
    std::vector<cplx> cur = u0.coeffs();
    std::vector<cplx> prev = cur;
    for (long long s = 1; s <= n; ++s) {
        prev = cur;
        const double sup0 = stepper.step(cur.data());
        const bool over = sup0 > cfg.linf_halt;
        bool bad = over;
        if (!bad)
            for (const cplx& v : cur)
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                    bad = true;
                    break;
                }
        if (bad) {
            res.halted = true;
            res.halt_reason = over ? "sup norm exceeded the blow-up guard"
                                   : "integrator produced a non-finite state";
            res.final_state = Field::from_coeffs(g, std::move(prev));
            res.t_final = (s - 1) * cfg.dt;
            res.steps_taken = s - 1;
            if (res.diagnostics.back().step != s - 1)
                res.diagnostics.push_back(make_row(s - 1, res.t_final, res.final_state,
                                                   cfg.k, cfg.sign, cfg.c_kt, mass0));
            return res;
        }
        const bool last = s == n;
        if (last || (cfg.diagnostics_stride > 0 && s % cfg.diagnostics_stride == 0) ||
            (snaps && s % cfg.snapshot_stride == 0)) {
            Field state = Field::from_coeffs(g, cur);
            if (last || (cfg.diagnostics_stride > 0 && s % cfg.diagnostics_stride == 0))
                res.diagnostics.push_back(
                    make_row(s, s * cfg.dt, state, cfg.k, cfg.sign, cfg.c_kt, mass0));
            if (snaps && (s % cfg.snapshot_stride == 0 || last))
                write_snapshot(snap_path(s), state, s * cfg.dt);
            if (last) res.final_state = std::move(state);
        }
    }
    res.t_final = n * cfg.dt;
    res.steps_taken = n;
    return res;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows) {
    std::string out = "t,mass,energy,grad_norm_sq,linf,X_t\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t,
                      r.mass, r.energy, r.grad_norm_sq, r.linf, r.X_t);
        out += buf;
    }
    return out;
}

Field ic_gaussian(const Grid& g, double a, double sigma, double x0, double y0) {
    const double Py = g.y_period();
    return Field::sample(g, [=](double x, double y) {
        double v = 0.0;
        for (int p = -3; p <= 3; ++p) {
            const double dy = y - y0 - p * Py;
            v += std::exp(-((x - x0) * (x - x0) + sigma * dy * dy));
        }
        return a * v;
    });
}

Field ic_modulated_gaussian(const Grid& g, double a, double width, double mod_amp) {
    const double Py = g.y_period();
    return Field::sample(g, [=](double x, double y) {
        const double z = x / width;
        return a * std::exp(-z * z) * (1.0 + mod_amp * std::cos(2.0 * M_PI * y / Py));
    });
}

Field ic_line_soliton(const Grid& g, int k, double c) { return analysis::line_soliton(g, k, c); }

Field ic_perturbed_soliton(const Grid& g, int k, double c, double eps) {
    Field base = analysis::line_soliton(g, k, c);
    const double Py = g.y_period();
    std::vector<double> v = base.values();
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
            v[static_cast<std::size_t>(i) * g.ny() + j] *=
                1.0 + eps * std::cos(2.0 * M_PI * g.y(j) / Py);
    return Field::from_values(g, std::move(v));
}

SolitonCheck soliton_check(const Field& initial, const Field& final_state, double c, double t) {
    const Grid& g = initial.grid();
    if (!g.same_layout(final_state.grid()))
        fail(ErrorClass::ConfigError, "soliton check needs matching grids");
    std::vector<cplx> ch = initial.coeffs();
    for (int i = 0; i < g.nx(); ++i) {
        const cplx phase = std::polar(1.0, -g.freq_x(i) * c * t);
        for (int j = 0; j < g.ny(); ++j) ch[g.mode_index(i, j)] *= phase;
    }
    Field shifted = Field::from_coeffs(g, std::move(ch));
    Field diff = final_state - shifted;
    SolitonCheck out;
    out.shape_error = std::sqrt(diff.l2_sq() / shifted.l2_sq());

    const std::vector<double>& v = final_state.values();
    for (int i = 0; i < g.nx(); ++i) {
        const double* row = v.data() + static_cast<std::size_t>(i) * g.ny();
        double mean = 0.0;
        for (int j = 0; j < g.ny(); ++j) mean += row[j];
        mean /= g.ny();
        double var = 0.0;
        for (int j = 0; j < g.ny(); ++j) var += (row[j] - mean) * (row[j] - mean);
        out.y_variation = std::max(out.y_variation, std::sqrt(var / g.ny()));
    }
    return out;
}

Field rescale_mass(const Field& u, double target_mass_sq) {
    const double m = u.l2_sq();
    if (!(m > 0.0)) fail(ErrorClass::ConfigError, "cannot rescale a zero field");
    if (!(target_mass_sq >= 0.0))
        fail(ErrorClass::ConfigError, "target mass must be nonnegative");
    Field out = u;
    out *= std::sqrt(target_mass_sq / m);
    return out;
}

} // namespace gzk::dynamics
