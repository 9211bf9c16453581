#pragma once

// Weak-measurement protocol: exact post-selected pointer evolution, weak
// values and their conditional real/imaginary forms, first-order pointer
// prediction, moment readout, expectation decomposition and the classical
// and current-density companions.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "wvlab/hilbert.hpp"
#include "wvlab/pointer.hpp"
#include "wvlab/projective.hpp"

namespace wvlab {

struct PointerParams {
    GridSpec grid;
    double x0 = 0.0;
    double sigma = 1.0;
};

// Pre-state at t_i, intermediate/final unitaries, the weakly coupled
// observable A with effective coupling g, and the post-selection basis B
// with outcome index f. The interaction is impulsive at t_w; tau is kept
// as inert metadata.
struct WeakScenario {
    cvec pre;
    Matrix U_wi;
    Matrix A;
    double g = 0.0;
    Matrix U_fw;
    SpectralDecomposition B;
    std::size_t f = 0;
    PointerParams pointer;
    double tau = 0.0;
};

// g * max|a_k| <= 0.1 * sigma (informative, not enforced).
bool weak_regime(const WeakScenario& s);

struct WeakValue {
    cplx value;
    double re = 0.0;
    double im = 0.0;
    double ps_probability = 0.0;
    bool divergence_warning = false;
};

// A_f^w = <b_f(t_w)|A|psi(t_w)> / <b_f(t_w)|psi(t_w)>.
WeakValue weak_value(const WeakScenario& s);

// Real part from the symmetrized-operator conditional average, imaginary
// part from the commutator (backaction) form. Both must match weak_value.
std::pair<double, double> weak_value_parts(const WeakScenario& s);

// Exact (no small-g expansion) post-selected pointer state and its
// squared norm, the post-selection probability.
std::pair<PointerState, double> weak_protocol_exact(const WeakScenario& s);

// First-order prediction <b_f(t_w)|psi(t_w)> exp(g Im A^w P) |phi_{x0 - g Re A^w}>.
PointerState weak_pointer_prediction(const WeakScenario& s);

// Moment readout: re from the position shift, im from the momentum shift
// divided by 2 g Var(P) of the baseline (Gaussian-pointer inversion).
std::pair<double, double> extract_weak_value_from_pointer(const PointerState& exact,
                                                          const PointerState& baseline,
                                                          double g);

// Per post-selection outcome f with p_f >= eps_ps: (p_f, A_f^w).
// Satisfies sum p_f Re A_f^w = <psi|A|psi> and sum p_f Im A_f^w = 0.
std::vector<std::pair<double, WeakValue>> expectation_decomposition(
    const cvec& psi, const Matrix& A, const SpectralDecomposition& B);

// Identical pre/post-selection: sum_k p_k translate(phi, g a_k); the
// renormalized mean shifts by g <psi|A|psi> to first order.
PointerState identical_prepost_pointer(const cvec& psi, const SpectralDecomposition& A,
                                       double g, const PointerState& phi);

struct MonteCarloResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t accepted = 0;
    std::size_t total = 0;
};

// Filtered ensemble average of A_fn over samples accepted by filter_fn.
// Deterministic under a fixed seed.
MonteCarloResult classical_weak_analogue(const std::function<double(std::mt19937_64&)>& sampler,
                                         const std::function<double(double)>& A_fn,
                                         const std::function<bool(double)>& filter_fn,
                                         std::size_t n_samples, std::uint64_t seed);

struct CurrentDensityResult {
    double re_wv;          // Re <x|P|psi> / <x|psi>, P applied spectrally
    double current_ratio;  // m j(x) / rho(x), finite-difference current
};

CurrentDensityResult current_density_weak_value(const PointerState& psi_x,
                                                std::size_t x_index, double mass);

// |<a|b>|^2 between renormalized states.
double fidelity(const PointerState& a, const PointerState& b);

// Sine of the Fubini-Study angle, sqrt(1 - fidelity), computed from the
// orthogonal residual so small deficits stay accurate.
double fidelity_deficit(const PointerState& a, const PointerState& b);

// Least-squares slope of log10(residual) against log10(g).
double fit_loglog_slope(std::span<const double> g, std::span<const double> residual);

} // namespace wvlab
