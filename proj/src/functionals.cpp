#include "gzk/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>

#include "gzk/bumps.hpp"
#include "gzk/error.hpp"
#include "gzk/fft.hpp"

namespace gzk::functionals {

namespace {

constexpr double kGuard = 1e-12;

bool strictly_less(double a, double b) {
    return a < b - kGuard * std::max(std::fabs(a), std::fabs(b));
}

// Spectral d^order/dy^order of a period-1 sampled function; unpaired Nyquist
// zeroed for odd orders.
std::vector<double> dy_spec(const std::vector<double>& f, int order) {
    const int n = static_cast<int>(f.size());
    std::vector<cplx> c(n), ch(n);
    for (int i = 0; i < n; ++i) c[i] = f[i];
    fft::forward_1d_batch(n, 1, c.data(), ch.data());
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx iphase = ipow[order % 4];
    for (int m = 0; m < n; ++m) {
        const int w = m <= n / 2 - 1 ? m : m - n;
        const double q = 2.0 * M_PI * w;
        ch[m] *= (order % 2 == 1 && m == n / 2) ? cplx(0.0) : iphase * std::pow(q, order);
    }
    fft::backward_1d_batch(n, 1, ch.data(), c.data());
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = c[i].real();
    return out;
}

std::uint64_t fnv64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) h = (h ^ p[i]) * 1099511628211ull;
    return h;
}

} // namespace

double mass(const Field& u) { return u.l2_sq(); }

double energy(const Field& u, int k, int sign) {
    return 0.5 * u.grad_sq() - sign * u.integral_power(k + 2) / (k + 2);
}

double gn_left(const Field& f, int k) { return f.integral_abs_power(k + 2); }

double gn_right(const Field& f, int k, double C_kR, double C_kT) {
    const double m = f.l2_sq();
    return C_kR * m * std::pow(f.grad_sq() + C_kT * m, 0.5 * k);
}

PartitionChoice build_partition(PartitionProfile profile, int ny) {
    if (ny < 16 || ny % 4 != 0)
        fail(ErrorClass::ConfigError, "partition grid must be a multiple of 4 and >= 16");
    auto ramp = profile == PartitionProfile::CosineBump ? bumps::ramp_cosine
                                                        : bumps::ramp_polynomial;
    PartitionChoice pc;
    pc.profile = profile;
    pc.ny = ny;
    std::vector<double> e1sq(ny);
    for (int j = 0; j < ny; ++j) {
        const double y = static_cast<double>(j) / ny;
        const double up = ramp((y - 0.25) / (1.0 / 3.0 - 0.25));
        const double dn = ramp((0.75 - y) / (0.75 - 2.0 / 3.0));
        e1sq[j] = y < 0.5 ? up : dn;
        const bool outside = y <= 0.25 || y >= 0.75;
        const bool plateau = y >= 1.0 / 3.0 && y <= 2.0 / 3.0;
        if ((outside && e1sq[j] != 0.0) || (plateau && e1sq[j] != 1.0) || e1sq[j] < 0.0 ||
            e1sq[j] > 1.0)
            fail(ErrorClass::ConfigError, "partition construction violated support constraints");
    }
    pc.eta1.resize(ny);
    pc.eta2.resize(ny);
    for (int j = 0; j < ny; ++j) {
        pc.eta1[j] = std::sqrt(e1sq[j]);
        pc.eta2[j] = std::sqrt(std::max(0.0, 1.0 - e1sq[j]));
    }
    const std::vector<double> d1 = dy_spec(pc.eta1, 1);
    const std::vector<double> d2 = dy_spec(pc.eta2, 1);
    // eta2^2 = 1 - eta1^2 holds exactly on the samples, and the discrete
    // spectral derivative is linear with D^2(1) = 0, so D^2(eta2^2) =
    // -D^2(eta1^2); evaluating the right-hand side directly makes the
    // second-derivative cancellation in H1 + H2 exact instead of leaving
    // ~1e-10 of q^2-amplified roundoff.
    const std::vector<double> dd = dy_spec(e1sq, 2);
    pc.H1.resize(ny);
    pc.H2.resize(ny);
    double cb = 0.0;
    for (int j = 0; j < ny; ++j) {
        pc.H1[j] = -0.5 * dd[j] + d1[j] * d1[j];
        pc.H2[j] = 0.5 * dd[j] + d2[j] * d2[j];
        cb = std::max(cb, std::fabs(pc.H1[j] + pc.H2[j]));
    }
    pc.c_bound = cb;
    if (!(cb > 0.0)) fail(ErrorClass::ConfigError, "partition produced a nonpositive c_bound");
    return pc;
}

SgnReport verify_sgn_suite(int k, double C_kR, double C_kT, int trials, std::uint64_t seed) {
    if (trials < 1) fail(ErrorClass::ConfigError, "trials must be >= 1");
    if (!(C_kR > 0.0) || C_kT < 0.0)
        fail(ErrorClass::ConfigError, "constants must satisfy C_kR > 0, C_kT >= 0");
    SgnReport rep;
    rep.k = k;
    rep.C_kR = C_kR;
    rep.C_kT = C_kT;
    rep.trials = trials;
    rep.seed = seed;

    const Grid g = Grid::cylinder(16.0, 128, 64);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<double> noise(g.size());
    std::vector<cplx> c(g.size()), ch(g.size());
    for (int t = 0; t < trials; ++t) {
        const double xi0 = 2.0 * std::pow(4.0, unif(rng));
        const double q0 = 4.0 * std::pow(6.25, unif(rng));
        const double amp = 0.5 * std::pow(4.0, unif(rng));
        for (auto& v : noise) v = gauss(rng);
        for (std::size_t i = 0; i < g.size(); ++i) c[i] = noise[i];
        fft::forward_2d_c(g.nx(), g.ny(), c.data(), ch.data());
        for (int i = 0; i < g.nx(); ++i)
            for (int j = 0; j < g.ny(); ++j) {
                const double xi = g.freq_x(i) / xi0, q = g.freq_y(j) / q0;
                ch[static_cast<std::size_t>(i) * g.ny() + j] *= std::exp(-(xi * xi + q * q));
            }
        fft::backward_2d_c(g.nx(), g.ny(), ch.data(), c.data());
        for (std::size_t i = 0; i < g.size(); ++i) noise[i] = c[i].real();
        Field u = Field::from_values(g, noise);
        const double sup = u.sup();
        if (sup > 0.0) u *= amp / sup;

        SgnTrial row;
        row.trial = t;
        const double desc[4] = {xi0, q0, amp, static_cast<double>(t)};
        row.descriptor = fnv64(desc, sizeof(desc));
        row.left = gn_left(u, k);
        row.right = gn_right(u, k, C_kR, C_kT);
        row.ratio = row.right > 0.0 ? row.left / row.right : 0.0;
        if (row.left > row.right * (1.0 + 1e-9)) ++rep.violations;
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<ScanPoint> falsification_scan(int k, double C_kR,
                                          const std::vector<double>& lambdas) {
    const Grid g = Grid::cylinder(48.0, 512, 8);
    std::vector<ScanPoint> out;
    for (double lam : lambdas) {
        Field f = Field::sample(g, [lam](double x, double) {
            const double z = lam * x;
            return std::exp(-z * z);
        });
        out.push_back({lam, gn_left(f, k) / gn_right(f, k, C_kR, 0.0)});
    }
    return out;
}

std::vector<ScanPoint> concentration_scan(const groundstate::GroundState& gs,
                                          const std::vector<double>& lambdas) {
    const Grid g = Grid::cylinder(4.0, 512, 256);
    const groundstate::RadialProfile rp(gs);
    std::vector<ScanPoint> out;
    for (double lam : lambdas) {
        Field f = Field::sample(g, [&](double x, double y) {
            return lam * rp(std::hypot(lam * x, lam * (y - 0.5)));
        });
        out.push_back({lam, groundstate::gn_functional(f, gs.k)});
    }
    return out;
}

ThresholdReport threshold_report(const Field& u0, int k, const groundstate::GroundState& gs,
                                 double C_kT) {
    if (k < 2) fail(ErrorClass::ConfigError, "threshold predicates need k >= 2");
    if (gs.k != k) fail(ErrorClass::ConfigError, "ground state order does not match k");
    ThresholdReport r;
    r.k = k;
    r.C_kT = C_kT;
    r.mass = mass(u0);
    r.energy = energy(u0, k, +1);
    r.grad_sq = u0.grad_sq();
    r.A_k = 2.0 * r.energy + C_kT * r.mass;
    r.B_k = 2.0 * gs.sharp_constant * r.mass / (k + 2);
    r.X0 = r.grad_sq + C_kT * r.mass;

    if (k == 2) {
        r.gr0_holds = strictly_less(r.mass, gs.mass_sq);
        r.verdict = r.gr0_holds ? Verdict::GlobalByTheorem : Verdict::NotCovered;
        return r;
    }

    const double s_k = static_cast<double>(k - 2) / k;
    const double HQ = 0.5 * gs.grad_sq - gs.potential / (k + 2);
    const double gr1_lhs =
        std::pow(r.energy + 0.5 * C_kT * r.mass, s_k) * std::pow(r.mass, 1.0 - s_k);
    const double gr1_rhs = std::pow(HQ, s_k) * std::pow(gs.mass_sq, 1.0 - s_k);
    r.gr1_holds = strictly_less(gr1_lhs, gr1_rhs);
    const double gr2_lhs = std::pow(r.X0, 0.5 * s_k) * std::pow(r.mass, 0.5 * (1.0 - s_k));
    const double gr2_rhs =
        std::pow(gs.grad_sq, 0.5 * s_k) * std::pow(gs.mass_sq, 0.5 * (1.0 - s_k));
    r.gr2_holds = strictly_less(gr2_lhs, gr2_rhs);

    r.x0 = std::pow(2.0 / (k * r.B_k), 2.0 / (k - 2));
    r.f_x0 = r.x0 * (k - 2) / k; // max of x - B_k x^{k/2}
    r.a_below_fx0 = strictly_less(r.A_k, r.f_x0);
    r.x0_above_X0 = strictly_less(r.X0, r.x0);
    if (r.gr1_holds && r.gr2_holds && !(r.a_below_fx0 && r.x0_above_X0))
        fail(ErrorClass::NoConvergence,
             "threshold implication failed: GR1 and GR2 hold but A_k >= f(x0) or X(0) >= x0");

    r.verdict = r.gr1_holds && r.gr2_holds ? Verdict::GlobalByTheorem : Verdict::NotCovered;
    return r;
}

double remark_positivity_check(const Field& u0, int k, const groundstate::GroundState& gs,
                               double C_kT) {
    if (k < 3) fail(ErrorClass::ConfigError, "positivity chain needs k >= 3");
    const ThresholdReport r = threshold_report(u0, k, gs, C_kT);
    const double lhs = r.energy + 0.5 * C_kT * r.mass;
    const double rhs = (static_cast<double>(k - 2) / (2.0 * k)) * (r.grad_sq + C_kT * r.mass);
    return lhs - rhs;
}

double k2_gradient_ceiling(double H0, double M0, double M_Q, double C_kT) {
    if (!(M0 < M_Q)) fail(ErrorClass::ConfigError, "ceiling requires M0 < M_Q");
    return (2.0 * H0 + C_kT * M0 * M0 / M_Q) / (1.0 - M0 / M_Q);
}

std::string sgn_report_csv(const SgnReport& r) {
    std::string out = "trial,descriptor,left,right,ratio\n";
    char buf[160];
    for (const auto& t : r.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%016llx,%.17g,%.17g,%.17g\n", t.trial,
                      static_cast<unsigned long long>(t.descriptor), t.left, t.right, t.ratio);
        out += buf;
    }
    return out;
}

} // namespace gzk::functionals
