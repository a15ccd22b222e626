#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gzk/error.hpp"

namespace gzk {

// Uniform periodic grid for the truncated cylinder and for square boxes.
//
//   x covers [-Lx, Lx) with nx points, wavenumbers xi_j = pi*j/Lx
//   y covers [y0, y0+Py) with ny points, wavenumbers q_m = 2*pi*m/Py
//
// The cylinder has Py = 1, y0 = 0. The ground-state solver uses a square box
// with Py = 2*Lx, y0 = -Lx so both axes carry the same resolution.
// Spectral data is stored in FFT wrap-around order; freq_x/freq_y give the
// signed wavenumber of each storage index.
class Grid {
  public:
    static Grid cylinder(double Lx, int nx, int ny) { return Grid(Lx, nx, ny, 1.0, 0.0); }

    static Grid plane(double L, int n) { return Grid(L, n, n, 2.0 * L, -L); }

    Grid(double Lx, int nx, int ny, double y_period, double y_origin)
        : Lx_(Lx), nx_(nx), ny_(ny), y_period_(y_period), y_origin_(y_origin) {
        if (!(Lx > 0.0) || !(y_period > 0.0))
            fail(ErrorClass::ConfigError, "grid extents must be positive");
        if (nx < 4 || ny < 4 || nx % 2 != 0 || ny % 2 != 0)
            fail(ErrorClass::ConfigError, "grid sizes must be even and >= 4");
        freq_x_.resize(nx);
        freq_y_.resize(ny);
        const double pi = std::acos(-1.0);
        for (int j = 0; j < nx; ++j) {
            int w = (j <= nx / 2 - 1) ? j : j - nx;
            freq_x_[j] = pi * w / Lx;
        }
        for (int m = 0; m < ny; ++m) {
            int w = (m <= ny / 2 - 1) ? m : m - ny;
            freq_y_[m] = 2.0 * pi * w / y_period;
        }
    }

    double Lx() const { return Lx_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double y_period() const { return y_period_; }
    double y_origin() const { return y_origin_; }
    bool is_cylinder() const { return y_period_ == 1.0 && y_origin_ == 0.0; }

    std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
    double dx() const { return 2.0 * Lx_ / nx_; }
    double dy() const { return y_period_ / ny_; }
    double cell_area() const { return dx() * dy(); }
    double area() const { return 2.0 * Lx_ * y_period_; }

    double x(int i) const { return -Lx_ + dx() * i; }
    double y(int j) const { return y_origin_ + dy() * j; }

    double freq_x(int i) const { return freq_x_[i]; }
    double freq_y(int j) const { return freq_y_[j]; }
    const std::vector<double>& freqs_x() const { return freq_x_; }
    const std::vector<double>& freqs_y() const { return freq_y_; }

    // Storage index of mode (j, m) given signed integer mode numbers.
    std::size_t mode_index(int j, int m) const {
        int i = j >= 0 ? j : j + nx_;
        int l = m >= 0 ? m : m + ny_;
        return static_cast<std::size_t>(i) * ny_ + l;
    }

    bool same_layout(const Grid& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && Lx_ == o.Lx_ && y_period_ == o.y_period_ &&
               y_origin_ == o.y_origin_;
    }

  private:
    double Lx_;
    int nx_, ny_;
    double y_period_, y_origin_;
    std::vector<double> freq_x_, freq_y_;
};

} // namespace gzk
