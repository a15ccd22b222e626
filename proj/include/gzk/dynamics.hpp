#pragma once

#include <string>
#include <vector>

#include "gzk/field.hpp"

namespace gzk::dynamics {

// Dispersion relation of the linear part u_t + u_xxx + u_xyy = 0: modes evolve
// as exp(i w(xi,q) t) with w = xi^3 + xi q^2.
inline double dispersion_symbol(double xi, double q) { return xi * (xi * xi + q * q); }

// Exact solution of the linear flow: multiplies each coefficient by
// exp(i w t). Unitary on L^2 for any t.
Field linear_propagate(const Field& u, double t);

// Spectral coefficients of -sign * d/dx (u^{k+1}), evaluated with the
// (k+3)/2-padded product grid so the power is alias-free. Input and output
// are coefficient arrays on the same grid. When sup_linf is non-null it
// receives the sup norm of the (padded-grid) physical field, a free
// byproduct of the product evaluation.
void nonlinear_rhs(const Grid& g, int k, int sign, const cplx* uh, cplx* out,
                   double* sup_linf = nullptr);

struct SimConfig {
    int k = 2;
    int sign = +1; // +1 focusing (gradient-term sign in the energy), -1 defocusing
    double Lx = 32.0;
    int nx = 256;
    int ny = 64;
    double dt = 1e-3;
    double t_end = 1.0;
    int snapshot_stride = 0;    // 0 disables snapshots
    int diagnostics_stride = 1; // rows every this many steps (plus t=0 and final)
    double c_kt = 0.0;          // constant folded into the X(t) diagnostic column
    double linf_halt = 1e6;
    std::string out_dir;

    void validate() const;
    long long nsteps() const; // t_end/dt, which must be integral to ~1e-9
};

// Fourth-order exponential integrator for u_t = L u + N(u) with the diagonal
// linear symbol above. Coefficient tables are evaluated by the standard
// contour trick near z = 0 to avoid cancellation.
class EtdRk4 {
public:
    EtdRk4(const Grid& g, int k, int sign, double dt);

    // Advances the coefficient array one step in place. Returns the sup norm
    // of the pre-step state (a free byproduct of the first stage).
    double step(cplx* uh);

    const Grid& grid() const { return grid_; }
    double dt() const { return dt_; }

private:
    Grid grid_;
    int k_, sign_;
    double dt_;
    std::vector<cplx> E_, E2_, Q_, f1_, f2_, f3_;
    std::vector<cplx> n0_, na_, nb_, nc_, a_, b_, c_;
};

// Single-step convenience wrapper over a fresh integrator. Throws NonFinite
// if the step leaves the finite range.
Field step_etdrk4(const Field& u, const SimConfig& cfg);

struct DiagnosticsRow {
    long long step = 0;
    double t = 0.0;
    double mass = 0.0, energy = 0.0, grad_norm_sq = 0.0, linf = 0.0, X_t = 0.0;
};

struct EvolveResult {
    Field final_state;
    double t_final = 0.0;
    long long steps_taken = 0;
    bool halted = false;      // stopped before t_end (blow-up guard)
    std::string halt_reason;  // empty when !halted
    std::vector<DiagnosticsRow> diagnostics;
};

// Runs the integrator from u0 to t_end, recording diagnostics and optional
// snapshots (snap_<step>.gzkf under cfg.out_dir). On a halt the final state
// is the last finite pre-halt step.
EvolveResult evolve(const Field& u0, const SimConfig& cfg);

std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows);

// Initial data helpers. The Gaussian is periodized over the y direction so it
// is smooth across the seam of the torus.
Field ic_gaussian(const Grid& g, double a, double sigma, double x0 = 0.0, double y0 = 0.5);
// a * exp(-(x/width)^2) * (1 + mod_amp cos(2 pi y / P_y)); y-uniform when
// mod_amp = 0.
Field ic_modulated_gaussian(const Grid& g, double a, double width, double mod_amp);
Field ic_line_soliton(const Grid& g, int k, double c);
Field ic_perturbed_soliton(const Grid& g, int k, double c, double eps);
Field rescale_mass(const Field& u, double target_mass_sq);

// Shape comparison against the exactly translated initial profile (spectral
// shift by c*t) plus the largest per-column standard deviation in y, which
// stays at roundoff when the dynamics preserve y-independence.
struct SolitonCheck {
    double shape_error = 0.0;  // ||u - shift||_2 / ||shift||_2
    double y_variation = 0.0;
};
SolitonCheck soliton_check(const Field& initial, const Field& final_state, double c, double t);

} // namespace gzk::dynamics
