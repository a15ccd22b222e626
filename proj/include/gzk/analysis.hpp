#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gzk/field.hpp"

namespace gzk::analysis {

// Resonance function of the dispersion relation, in the factored form
//   H = 3 xi1 xi2 (xi1+xi2) + xi2 q1^2 + xi1 q2^2 + 2 (xi1+xi2) q1 q2.
double resonance(double xi1, double q1, double xi2, double q2);

// Same quantity straight from the definition
// w(xi1+xi2, q1+q2) - w(xi1,q1) - w(xi2,q2); kept as an independent route so
// the two can be checked against each other.
double resonance_from_symbol(double xi1, double q1, double xi2, double q2);

// Central finite-difference second derivatives of the restrictions
// xi1 -> H(xi1, q1, xi-xi1, q-q1) and q1 -> H(xi1, q1, xi-xi1, q-q1).
// H is cubic in xi1 and quadratic in q1, so the central stencil is exact up
// to roundoff. The true values are (-6 xi, -2 xi): the restriction is the
// constant w(xi,q) minus two copies of the symbol, each contributing -3 xi
// resp. -1 xi independent of the split point.
std::pair<double, double> second_derivatives_check(double xi, double q, double xi1, double q1);
std::pair<double, double> second_derivatives_closed(double xi);

// Line soliton Q_c(x) = [ (c(k+2)/2) sech^2( (k sqrt(c)/2) x ) ]^{1/k}, the
// y-independent traveling wave of speed c > 0.
double line_soliton_value(int k, double c, double x);

// Samples Q_c on the grid (centered at x = 0, constant in y). Throws
// DomainTooSmall when the tail at the x boundary exceeds 1e-12 of the peak,
// since the periodic wrap would then corrupt the profile.
Field line_soliton(const Grid& g, int k, double c);

// Littlewood-Paley machinery. The spatial shell weight is
// |(xi,q)| = sqrt(3 xi^2 + q^2); phi_1 covers |(xi,q)| <= 8/5 and phi_N for
// dyadic N >= 2 is supported in [5N/8, 8N/5]. The family telescopes:
// sum_{N <= Nmax} phi_N(r) = 1 exactly for r <= 5 Nmax/4.
double shell_weight(double xi, double q);
double lp_phi(double r, int N);

Field project_spatial(const Field& u, int N);

// Real space-time samples on the grid times a uniform window of nt points
// t_i = t0 + i*window/nt (periodic in t for the discrete tau transform).
struct SpaceTimeField {
    Grid grid;
    int nt;
    double t0, window;
    std::vector<double> values; // nt slices, each nx*ny row-major

    SpaceTimeField(Grid g, int n, double start = -2.0, double length = 4.0)
        : grid(std::move(g)), nt(n), t0(start), window(length),
          values(static_cast<std::size_t>(n) * grid.size()) {}

    double time(int it) const { return t0 + window * it / nt; }
    double dt() const { return window / nt; }
    double* slice(int it) { return values.data() + static_cast<std::size_t>(it) * grid.size(); }
    const double* slice(int it) const {
        return values.data() + static_cast<std::size_t>(it) * grid.size();
    }
    template <class F>
    static SpaceTimeField sample(const Grid& g, int nt, double t0, double window, F&& f) {
        SpaceTimeField u(g, nt, t0, window);
        for (int it = 0; it < nt; ++it) {
            double* s = u.slice(it);
            const double t = u.time(it);
            for (int i = 0; i < g.nx(); ++i)
                for (int j = 0; j < g.ny(); ++j)
                    s[g.mode_index(i, j)] = f(t, g.x(i), g.y(j));
        }
        return u;
    }
};

// eta(t) * (free evolution of phi) sampled on the window; cutoff=false skips
// the eta factor.
SpaceTimeField free_wave(const Field& phi, int nt, double t0 = -2.0, double window = 4.0,
                         bool cutoff = true);

// Full (tau, xi, q) coefficients, mode-major: entry [mode*nt + m] is the
// coefficient at spatial mode `mode` and time frequency tau_m = 2 pi m'/window
// (wrap-around m'). Both transforms carry the 1/n normalization.
std::vector<cplx> spacetime_spectrum(const SpaceTimeField& u);
SpaceTimeField spacetime_from_spectrum(const Grid& g, int nt, double t0, double window,
                                       const std::vector<cplx>& spec);

// Modulation distance on the discrete tau circle: tau - w(xi,q) wrapped to
// [-pi*nt/window, pi*nt/window). Shells beyond what the lattice represents
// are rejected (ResolutionError) instead of silently aliasing.
double modulation_limit(const SpaceTimeField& u); // = pi * nt / window
SpaceTimeField project_modulation(const SpaceTimeField& u, int L);

// Fraction of space-time L^2 mass at modulation <= Lmax (mass of the
// telescoped projection sum_{L <= Lmax} Q_L u relative to u).
double modulation_low_fraction(const SpaceTimeField& u, int Lmax);

// Discrete X^{s,b} norm: sqrt( area * window * sum over (mode, m) of
// <|(xi,q)|_e>^{2s} <sigma>^{2b} |uhat|^2 ) with the Euclidean bracket
// <.>^2 = 1 + xi^2 + q^2 and sigma the wrapped modulation distance.
double xsb_norm(const SpaceTimeField& u, double s, double b);

// Space-time L^4 quadrature (exact once the grid oversamples the quartic
// product of the band limit).
double spacetime_l4(const SpaceTimeField& u);

// Strichartz ratio probe: random shell data on the cylinder lattice at
// Lx = 8 (unit-magnitude spectra, iid uniform phases, Hermitian-symmetrized),
// time-cutoff by eta, ratio R = ||u||_{L4} / ||u||_{X^{s,3/8}}.
struct ShellModes {
    int N = 1;
    std::vector<int> j, m; // lattice indices, xi = pi j/Lx, q = 2 pi m
};
ShellModes shell_modes(int N, double Lx);
std::vector<cplx> shell_phases(const ShellModes& sm, std::uint64_t seed, int trial);

struct TrialNorms {
    double l4 = 0.0, xsb = 0.0;
};
// Factorized fast path: the time transform of eta(t) e^{i w t} is evaluated
// per mode and the L^4 slice grid embeds only the shell modes. Agrees with
// the generic SpaceTimeField route; the test suite cross-checks the two.
TrialNorms trial_norms(const ShellModes& sm, const std::vector<cplx>& c, double Lx, int nt,
                       double s, double b);

struct ScaleStat {
    int N = 1;
    double max_ratio = 0.0, mean_ratio = 0.0;
};
struct ProbeReport {
    double s = 1.0 / 6.0, b = 0.375;
    int trials = 0;
    std::uint64_t seed = 0;
    int nt = 0;
    std::vector<ScaleStat> per_scale;
    double slope = 0.0; // least-squares slope of log(max_ratio) vs log(N)
};
ProbeReport strichartz_ratio_scan(std::uint64_t seed, const std::vector<int>& scales,
                                  int trials, double s = 1.0 / 6.0, double b = 0.375,
                                  int nt = 512, double Lx = 8.0);

} // namespace gzk::analysis
