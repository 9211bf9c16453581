#pragma once

// Von Neumann impulsive measurement (exact entangling evolution), Born-rule
// collapse and ABL conditional probabilities.

#include <utility>
#include <vector>

#include "wvlab/hilbert.hpp"
#include "wvlab/pointer.hpp"

namespace wvlab {

// System x pointer amplitudes in the computational system basis,
// row i = pointer wavefunction attached to system basis state i.
struct JointState {
    std::size_t sys_dim = 0;
    GridSpec grid;
    cvec amplitudes;  // sys_dim * n_points, system-major

    cplx& at(std::size_t i, std::size_t xi) { return amplitudes[i * grid.n_points + xi]; }
    const cplx& at(std::size_t i, std::size_t xi) const {
        return amplitudes[i * grid.n_points + xi];
    }

    double squared_norm() const;
    // Marginal pointer density n(x_i) (not dx-weighted).
    std::vector<double> reduced_pointer_density() const;
};

// exp(-i g A P) |psi>|phi> = sum_k <a_k|psi> |a_k> (x) translate(phi, g a_k).
// Degenerate observables must go through the grouped-projector variant.
JointState von_neumann_couple(const cvec& psi, const SpectralDecomposition& A,
                              const PointerState& phi, double g);

// Same coupling expressed through eigenvalue-grouped spectral projectors.
JointState von_neumann_couple_grouped(const cvec& psi,
                                      const std::vector<std::pair<double, Matrix>>& spectral,
                                      const PointerState& phi, double g);

// Born probability of outcome f and the collapsed state.
std::pair<double, cvec> born_measure(const cvec& psi, const SpectralDecomposition& B,
                                     std::size_t f);

// Projector-set variant: probability <psi|Pi|psi> and normalized projection.
std::pair<double, cvec> born_measure_projector(const cvec& psi, const Matrix& Pi);

// Projects the joint state onto the post-selected system state
// <b_f(t_w)| = <b_f| U_fw and returns the (sub-normalized) pointer state
// together with its squared norm, the post-selection probability.
std::pair<PointerState, double> post_select(const JointState& J,
                                            const SpectralDecomposition& B, std::size_t f,
                                            const Matrix& U_fw);

// ABL conditional probability of intermediate outcome n given pre- and
// post-selection, for a complete orthogonal projector set.
double abl_probability(const cvec& pre, const cvec& post,
                       const std::vector<Matrix>& projectors, std::size_t n);

} // namespace wvlab
