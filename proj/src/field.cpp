#include "gzk/field.hpp"

#include <cmath>
#include <cstring>

#include "gzk/error.hpp"
#include "gzk/fft.hpp"
#include "gzk/kernels.hpp"

namespace gzk {

void pad_coeffs(int nx, int ny, const cplx* in, int mx, int my, cplx* out) {
    const int hx = nx / 2, hy = ny / 2;
    std::fill(out, out + static_cast<std::size_t>(mx) * my, cplx(0.0));
    for (int i = 0; i < nx; ++i) {
        const int ii = i < hx ? i : i + (mx - nx);
        const cplx* src = in + static_cast<std::size_t>(i) * ny;
        cplx* dst = out + static_cast<std::size_t>(ii) * my;
        std::memcpy(dst, src, sizeof(cplx) * hy);
        std::memcpy(dst + (my - hy), src + hy, sizeof(cplx) * hy);
    }
}

void truncate_coeffs(int mx, int my, const cplx* in, int nx, int ny, cplx* out) {
    const int hx = nx / 2, hy = ny / 2;
    for (int i = 0; i < nx; ++i) {
        const int ii = i < hx ? i : i + (mx - nx);
        const cplx* src = in + static_cast<std::size_t>(ii) * my;
        cplx* dst = out + static_cast<std::size_t>(i) * ny;
        std::memcpy(dst, src, sizeof(cplx) * hy);
        std::memcpy(dst + hy, src + (my - hy), sizeof(cplx) * hy);
    }
}

Field::Field(Grid g) : grid_(std::move(g)), vals_(grid_.size(), 0.0), state_(State::Phys) {}

Field Field::from_values(Grid g, std::vector<double> v) {
    if (v.size() != g.size()) fail(ErrorClass::ConfigError, "value array does not match grid");
    Field f(std::move(g));
    f.vals_ = std::move(v);
    f.state_ = State::Phys;
    return f;
}

Field Field::from_coeffs(Grid g, std::vector<cplx> c) {
    if (c.size() != g.size()) fail(ErrorClass::ConfigError, "coefficient array does not match grid");
    Field f(std::move(g));
    f.vals_.clear();
    f.coef_ = std::move(c);
    f.state_ = State::Spec;
    return f;
}

void Field::sync_values() const {
    if (state_ == State::Spec) {
        vals_.resize(grid_.size());
        fft::backward_2d(grid_.nx(), grid_.ny(), coef_.data(), vals_.data());
        state_ = State::Both;
    }
}

void Field::sync_coeffs() const {
    if (state_ == State::Phys) {
        coef_.resize(grid_.size());
        fft::forward_2d(grid_.nx(), grid_.ny(), vals_.data(), coef_.data());
        state_ = State::Both;
    }
}

const std::vector<double>& Field::values() const {
    sync_values();
    return vals_;
}

const std::vector<cplx>& Field::coeffs() const {
    sync_coeffs();
    return coef_;
}

std::vector<double>& Field::mut_values() {
    sync_values();
    state_ = State::Phys;
    return vals_;
}

std::vector<cplx>& Field::mut_coeffs() {
    sync_coeffs();
    state_ = State::Spec;
    return coef_;
}

bool Field::finite() const {
    for (double v : values())
        if (!std::isfinite(v)) return false;
    return true;
}

double Field::sup() const { return kernels::active().max_abs(values().data(), grid_.size()); }

double Field::integral() const { return coeffs()[0].real() * grid_.area(); }

double Field::l2_sq() const {
    return kernels::active().sum_sq(values().data(), grid_.size()) * grid_.cell_area();
}

double Field::grad_sq() const {
    const auto& c = coeffs();
    std::vector<double> w(grid_.size());
    for (int i = 0; i < grid_.nx(); ++i) {
        const double xi2 = grid_.freq_x(i) * grid_.freq_x(i);
        for (int j = 0; j < grid_.ny(); ++j)
            w[static_cast<std::size_t>(i) * grid_.ny() + j] =
                xi2 + grid_.freq_y(j) * grid_.freq_y(j);
    }
    return kernels::active().weighted_abs2_sum(c.data(), w.data(), grid_.size()) * grid_.area();
}

double Field::hs_sq(double s) const {
    const auto& c = coeffs();
    std::vector<double> w(grid_.size());
    for (int i = 0; i < grid_.nx(); ++i) {
        const double xi2 = grid_.freq_x(i) * grid_.freq_x(i);
        for (int j = 0; j < grid_.ny(); ++j)
            w[static_cast<std::size_t>(i) * grid_.ny() + j] =
                std::pow(1.0 + xi2 + grid_.freq_y(j) * grid_.freq_y(j), s);
    }
    return kernels::active().weighted_abs2_sum(c.data(), w.data(), grid_.size()) * grid_.area();
}

namespace {

// int u^p via the zero-padded grid: for the signed power this quadrature is
// exact (the padded grid resolves the degree-p trig polynomial); for |u|^p it
// is plain oversampled quadrature, accurate to the smoothness of |u|^p.
double padded_power_integral(const Field& f, int p, bool absval) {
    const Grid& g = f.grid();
    const int factor = (p + 2) / 2;
    const int mx = factor * g.nx(), my = factor * g.ny();
    const std::size_t big = static_cast<std::size_t>(mx) * my;
    std::vector<cplx> cbig(big);
    pad_coeffs(g.nx(), g.ny(), f.coeffs().data(), mx, my, cbig.data());
    std::vector<cplx> ubig(big);
    fft::backward_2d_c(mx, my, cbig.data(), ubig.data());
    std::vector<double> w(big), wp(big);
    if (absval)
        for (std::size_t i = 0; i < big; ++i) w[i] = std::fabs(ubig[i].real());
    else
        for (std::size_t i = 0; i < big; ++i) w[i] = ubig[i].real();
    kernels::active().pow_int(wp.data(), w.data(), p, big);
    double s = 0.0;
    for (std::size_t i = 0; i < big; ++i) s += wp[i];
    return s * (g.area() / static_cast<double>(big));
}

} // namespace

double Field::integral_power(int p) const {
    if (p == 1) return integral();
    return padded_power_integral(*this, p, false);
}

double Field::integral_abs_power(int p) const { return padded_power_integral(*this, p, true); }

Field Field::derivative(int axis, int order) const {
    if (axis != 0 && axis != 1) fail(ErrorClass::ConfigError, "derivative axis must be 0 or 1");
    if (order < 1) fail(ErrorClass::ConfigError, "derivative order must be >= 1");
    const auto& c = coeffs();
    std::vector<cplx> out(grid_.size());
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx iphase = ipow[order % 4];
    const bool odd = order % 2 == 1;
    const int nx = grid_.nx(), ny = grid_.ny();
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double k = axis == 0 ? grid_.freq_x(i) : grid_.freq_y(j);
            const bool nyq = odd && ((axis == 0 && i == nx / 2) || (axis == 1 && j == ny / 2));
            const std::size_t idx = static_cast<std::size_t>(i) * ny + j;
            out[idx] = nyq ? cplx(0.0) : iphase * std::pow(k, order) * c[idx];
        }
    }
    return from_coeffs(grid_, std::move(out));
}

Field Field::dealiased_power(int p) const {
    if (p < 1) fail(ErrorClass::ConfigError, "power must be >= 1");
    if (p == 1) return *this;
    const int factor = (p + 2) / 2; // ceil((p+1)/2)
    const int nx = grid_.nx(), ny = grid_.ny();
    const int mx = factor * nx, my = factor * ny;
    const std::size_t big = static_cast<std::size_t>(mx) * my;

    std::vector<cplx> cbig(big);
    pad_coeffs(nx, ny, coeffs().data(), mx, my, cbig.data());
    std::vector<cplx> ubig(big);
    fft::backward_2d_c(mx, my, cbig.data(), ubig.data());

    std::vector<double> w(big), wp(big);
    for (std::size_t i = 0; i < big; ++i) w[i] = ubig[i].real();
    kernels::active().pow_int(wp.data(), w.data(), p, big);

    fft::forward_2d(mx, my, wp.data(), cbig.data());
    std::vector<cplx> out(grid_.size());
    truncate_coeffs(mx, my, cbig.data(), nx, ny, out.data());
    return from_coeffs(grid_, std::move(out));
}

Field& Field::operator+=(const Field& o) {
    if (!grid_.same_layout(o.grid_)) fail(ErrorClass::ConfigError, "field grids differ");
    auto& v = mut_values();
    const auto& ov = o.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += ov[i];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    if (!grid_.same_layout(o.grid_)) fail(ErrorClass::ConfigError, "field grids differ");
    auto& v = mut_values();
    const auto& ov = o.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= ov[i];
    return *this;
}

Field& Field::operator*=(double s) {
    if (state_ == State::Phys || state_ == State::Both) {
        kernels::active().scal(vals_.data(), s, vals_.size());
        if (state_ == State::Both) kernels::active().cscal(coef_.data(), s, coef_.size());
    } else {
        kernels::active().cscal(coef_.data(), s, coef_.size());
    }
    return *this;
}

} // namespace gzk
