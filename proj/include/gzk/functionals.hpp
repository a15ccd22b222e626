#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gzk/field.hpp"
#include "gzk/groundstate.hpp"

namespace gzk::functionals {

// Conserved quantities of the flow. sign = +1 focusing, -1 defocusing (the
// defocusing energy adds the potential term).
double mass(const Field& u);
double energy(const Field& u, int k, int sign = +1);

// The two sides of the cylinder Gagliardo-Nirenberg inequality
//   ||f||_{k+2}^{k+2} <= C_kR ||f||_2^2 (||grad f||_2^2 + C_kT ||f||_2^2)^{k/2}.
double gn_left(const Field& f, int k);
double gn_right(const Field& f, int k, double C_kR, double C_kT);

// Smooth partition of unity on the period-1 torus: eta1^2 + eta2^2 = 1,
// supp eta1 within [1/4, 3/4], eta1 = 1 on [1/3, 2/3], with the potentials
// H_j = -1/2 (eta_j^2)'' + (eta_j')^2 and c_bound = ||H1 + H2||_inf, the
// toolkit's working cylinder constant C_{k,T}. Both profiles compose the
// named ramp shape with an e^{-1/t} smoothstep, so every sample of eta_j is
// C^inf-consistent and the spectral derivatives converge faster than any
// power of the grid.
enum class PartitionProfile { CosineBump, PolynomialBump };

struct PartitionChoice {
    PartitionProfile profile;
    int ny = 0;
    std::vector<double> eta1, eta2;
    std::vector<double> H1, H2;
    double c_bound = 0.0;
};

PartitionChoice build_partition(PartitionProfile profile = PartitionProfile::CosineBump,
                                int ny = 512);

// Randomized verification of the inequality over band-limited random smooth
// fields (random spectral widths and amplitudes, seeded). A trial violates
// when left > right * (1 + 1e-9).
struct SgnTrial {
    int trial = 0;
    std::uint64_t descriptor = 0; // hash of the field parameters
    double left = 0.0, right = 0.0, ratio = 0.0;
};

struct SgnReport {
    int k = 0;
    double C_kR = 0.0, C_kT = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<SgnTrial> rows;
    int violations = 0;
    double max_ratio = 0.0;
};

SgnReport verify_sgn_suite(int k, double C_kR, double C_kT, int trials, std::uint64_t seed);

// Falsification scan (the constant cannot be zero): y-independent Gaussians
// g(lambda x) evaluated with C_kT = 0; the ratio left/right grows like
// lambda^{-k/2} as lambda decreases.
struct ScanPoint {
    double lambda = 0.0, ratio = 0.0;
};

std::vector<ScanPoint> falsification_scan(int k, double C_kR,
                                          const std::vector<double>& lambdas);

// Sharpness scan: lambda Q_k(lambda x, lambda(y - 1/2)) resampled on a short
// cylinder; the G-N ratio approaches C_{k,R} as the bump concentrates (from
// above here: the periodic images inflate the potential term, so the distance
// |ratio - C_{k,R}| is the monotone quantity).
std::vector<ScanPoint> concentration_scan(const groundstate::GroundState& gs,
                                          const std::vector<double>& lambdas);

// Global-existence threshold predicates. All inequalities are strict with a
// 1e-12 relative guard band; equality maps to NotCovered.
enum class Verdict { GlobalByTheorem, NotCovered };

struct ThresholdReport {
    int k = 0;
    double mass = 0.0, energy = 0.0, grad_sq = 0.0;
    double C_kT = 0.0;
    double A_k = 0.0, B_k = 0.0;
    double x0 = 0.0, f_x0 = 0.0; // k >= 3; f_x0 = x0 (k-2)/k, the max of x - B_k x^{k/2}
    double X0 = 0.0;             // grad_sq + C_kT * mass
    bool gr0_holds = false, gr1_holds = false, gr2_holds = false;
    bool a_below_fx0 = false, x0_above_X0 = false; // k >= 3 equivalents
    Verdict verdict = Verdict::NotCovered;
};

ThresholdReport threshold_report(const Field& u0, int k, const groundstate::GroundState& gs,
                                 double C_kT);

// Remark-chain positivity: H(u0) + C_kT M(u0)/2 - ((k-2)/(2k))(||grad u0||^2 +
// C_kT ||u0||^2), nonnegative under GR2 for k >= 3.
double remark_positivity_check(const Field& u0, int k, const groundstate::GroundState& gs,
                               double C_kT);

// The k = 2 a-priori gradient ceiling under GR0:
//   ||grad u(t)||^2 <= (2 H0 + C_2T M0^2 / M_Q) / (1 - M0 / M_Q).
double k2_gradient_ceiling(double H0, double M0, double M_Q, double C_kT);

std::string sgn_report_csv(const SgnReport& r);

} // namespace gzk::functionals
