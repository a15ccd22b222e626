#include "gzk/bumps.hpp"

#include <cmath>

namespace gzk::bumps {

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double ramp_cosine(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return smooth_step(0.5 * (1.0 - std::cos(M_PI * t)));
}

double ramp_polynomial(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double p = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    return smooth_step(p);
}

double lp_chi(double r) {
    return 1.0 - smooth_step((r - 1.25) / (1.6 - 1.25));
}

double eta_time(double t) { return lp_chi(std::fabs(t)); }

} // namespace gzk::bumps
