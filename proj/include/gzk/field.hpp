#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "gzk/grid.hpp"

namespace gzk {

using cplx = std::complex<double>;

// Embed wrap-around coefficients of an (nx, ny) grid into a larger (mx, my)
// array, zero-filling the new high modes, and the inverse truncation. Both are
// quadrant block copies; the stored Nyquist row/column travels with the
// negative-frequency block.
void pad_coeffs(int nx, int ny, const cplx* in, int mx, int my, cplx* out);
void truncate_coeffs(int mx, int my, const cplx* in, int nx, int ny, cplx* out);

// Real scalar field on a Grid, kept lazily in physical values and/or spectral
// coefficients (Fourier-series coefficients in wrap-around order). Reading
// either representation synchronizes it on demand; taking a mutable reference
// invalidates the other one.
class Field {
  public:
    explicit Field(Grid g);
    static Field from_values(Grid g, std::vector<double> v);
    static Field from_coeffs(Grid g, std::vector<cplx> c);

    template <class F>
    static Field sample(const Grid& g, F&& f) {
        std::vector<double> v(g.size());
        for (int i = 0; i < g.nx(); ++i)
            for (int j = 0; j < g.ny(); ++j)
                v[static_cast<std::size_t>(i) * g.ny() + j] = f(g.x(i), g.y(j));
        return from_values(g, std::move(v));
    }

    const Grid& grid() const { return grid_; }

    const std::vector<double>& values() const;
    const std::vector<cplx>& coeffs() const;
    std::vector<double>& mut_values();
    std::vector<cplx>& mut_coeffs();

    bool finite() const;
    double sup() const;                 // max |u|
    double integral() const;            // int u
    double l2_sq() const;               // int u^2
    double grad_sq() const;             // int |grad u|^2
    double hs_sq(double s) const;       // sum (1 + xi^2 + q^2)^s |c|^2 * area
    double integral_power(int p) const;     // int u^p, alias-free quadrature
    double integral_abs_power(int p) const; // int |u|^p on the padded grid

    // Spectral derivative d^order/d(axis)^order, axis 0 = x, 1 = y. The
    // unpaired Nyquist mode is zeroed for odd orders so real fields map to
    // real fields.
    Field derivative(int axis, int order) const;

    // u^p computed on a grid zero-padded by ceil((p+1)/2) per axis, truncated
    // back: no aliased content in the retained modes.
    Field dealiased_power(int p) const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double s);

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(Field a, double s) { return a *= s; }
    friend Field operator*(double s, Field a) { return a *= s; }

  private:
    enum class State { Phys, Spec, Both };

    void sync_values() const;
    void sync_coeffs() const;

    Grid grid_;
    mutable std::vector<double> vals_;
    mutable std::vector<cplx> coef_;
    mutable State state_;
};

} // namespace gzk
