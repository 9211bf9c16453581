#pragma once

// Discretized 1-D quantum pointer on a periodic grid. Translation and
// exponential-of-momentum kernels act in the DFT momentum representation,
// which makes them exact on the grid (no interpolation error). hbar = 1.

#include <cstddef>

#include "wvlab/hilbert.hpp"

namespace wvlab {

struct GridSpec {
    std::size_t n_points = 1024;  // power of two
    double extent = 40.0;         // total length L, periodic

    double dx() const { return extent / static_cast<double>(n_points); }
    // Centered positions x_i = -L/2 + i*dx.
    double x(std::size_t i) const {
        return -0.5 * extent + static_cast<double>(i) * dx();
    }
    // Momentum p_j = 2*pi*j/L with j wrapped to (-n/2, n/2].
    double p(std::size_t j) const;
    double p_max() const;

    bool operator==(const GridSpec&) const = default;
};

void validate(const GridSpec& grid);

struct PointerState {
    GridSpec grid;
    cvec values;  // wavefunction samples, length n_points

    // Sum |phi(x_i)|^2 dx. For post-selected (sub-normalized) states this
    // is the post-selection probability.
    double squared_norm() const;
    bool normalized(double tol = 1e-10) const;
    // Fraction of |phi|^2 within 2 grid points of either edge.
    double boundary_leakage() const;
};

PointerState renormalized(const PointerState& phi);

// Normalized Gaussian of position variance sigma^2 centered at x0.
// Requires sigma >= 4*dx and x0 within the central half of the grid.
PointerState make_gaussian(const GridSpec& grid, double x0, double sigma);

// exp(-i*s*P): shifts the wavefunction by s. Requires |s| < L/4.
PointerState translate(const PointerState& phi, double s);

// Multiplies each momentum component by exp(c*p_j). For c = -i*s this is
// translate(phi, s); a real part leaves the result unnormalized.
// Requires |Re c| * max|p| <= 30.
PointerState apply_exp_cP(const PointerState& phi, cplx c);

struct Moments {
    double mean_x;
    double var_x;
    double mean_p;
    double var_p;
};

// Moments of the renormalized |phi|^2 and of its DFT.
Moments moments(const PointerState& phi);

namespace detail {
// In-place radix-2 FFT; forward kernel exp(-i 2 pi jk / n), inverse scaled by 1/n.
void fft(cvec& v, bool inverse);
} // namespace detail

// Momentum-space samples (plain DFT of the position samples).
cvec momentum_representation(const PointerState& phi);

} // namespace wvlab
