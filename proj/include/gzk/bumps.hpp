#pragma once

namespace gzk::bumps {

// C^inf monotone step: 0 for t <= 0, 1 for t >= 1, built from the classic
// e^{-1/t} mollifier quotient. All flat derivatives at both ends, so anything
// assembled from it keeps spectral (faster than any power) coefficient decay.
double smooth_step(double t);

// Ramp shapes fed through smooth_step; both are C^inf with exact support
// endpoints. "cosine" reparameterizes by the raised cosine, "polynomial" by
// the quintic smoothstep.
double ramp_cosine(double t);
double ramp_polynomial(double t);

// Mollified radial indicator: 1 for r <= 5/4, 0 for r >= 8/5, smooth between.
// This single shape drives the Littlewood-Paley shells (phi_N(r) =
// lp_chi(r/N) - lp_chi(2r/N) for N >= 2, phi_1 = lp_chi), the modulation
// shells, and the time cutoff eta(t) = lp_chi(|t|) with plateau [-5/4, 5/4]
// and support [-8/5, 8/5].
double lp_chi(double r);

double eta_time(double t);

} // namespace gzk::bumps
