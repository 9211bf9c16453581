#include "wvlab/projective.hpp"

#include <cmath>

namespace wvlab {

double JointState::squared_norm() const {
    double s = 0.0;
    for (const auto& v : amplitudes) s += std::norm(v);
    return s * grid.dx();
}

std::vector<double> JointState::reduced_pointer_density() const {
    std::vector<double> d(grid.n_points, 0.0);
    for (std::size_t i = 0; i < sys_dim; ++i)
        for (std::size_t xi = 0; xi < grid.n_points; ++xi)
            d[xi] += std::norm(at(i, xi));
    return d;
}

JointState von_neumann_couple(const cvec& psi, const SpectralDecomposition& A,
                              const PointerState& phi, double g) {
    if (A.degenerate)
        throw contract_violation(
            "von_neumann_couple: degenerate observable, use the grouped-projector variant");
    if (A.dim() != psi.size())
        throw contract_violation("von_neumann_couple: dimension mismatch");
    if (!is_normalized(psi))
        throw contract_violation("von_neumann_couple: state not normalized");

    const std::size_t d = psi.size();
    const std::size_t n = phi.grid.n_points;
    JointState J{d, phi.grid, cvec(d * n)};
    for (std::size_t k = 0; k < d; ++k) {
        const cplx ck = inner(A.eigenvectors[k], psi);
        if (std::abs(ck) < 1e-300) continue;
        const PointerState shifted = translate(phi, g * A.eigenvalues[k]);
        for (std::size_t i = 0; i < d; ++i) {
            const cplx w = ck * A.eigenvectors[k][i];
            if (w == cplx{}) continue;
            for (std::size_t xi = 0; xi < n; ++xi) J.at(i, xi) += w * shifted.values[xi];
        }
    }
    return J;
}

JointState von_neumann_couple_grouped(const cvec& psi,
                                      const std::vector<std::pair<double, Matrix>>& spectral,
                                      const PointerState& phi, double g) {
    if (spectral.empty()) throw contract_violation("von_neumann_couple_grouped: empty spectrum");
    const std::size_t d = psi.size();
    if (!is_normalized(psi))
        throw contract_violation("von_neumann_couple_grouped: state not normalized");

    const std::size_t n = phi.grid.n_points;
    JointState J{d, phi.grid, cvec(d * n)};
    for (const auto& [value, Pi] : spectral) {
        if (Pi.dim != d) throw contract_violation("von_neumann_couple_grouped: dimension mismatch");
        const cvec proj = apply(Pi, psi);
        const PointerState shifted = translate(phi, g * value);
        for (std::size_t i = 0; i < d; ++i) {
            if (proj[i] == cplx{}) continue;
            for (std::size_t xi = 0; xi < n; ++xi) J.at(i, xi) += proj[i] * shifted.values[xi];
        }
    }
    return J;
}

std::pair<double, cvec> born_measure(const cvec& psi, const SpectralDecomposition& B,
                                     std::size_t f) {
    if (f >= B.dim()) throw contract_violation("born_measure: outcome index out of range");
    if (B.dim() != psi.size()) throw contract_violation("born_measure: dimension mismatch");
    if (!is_normalized(psi)) throw contract_violation("born_measure: state not normalized");
    const double p = std::norm(inner(B.eigenvectors[f], psi));
    if (p < kEpsPostSelect)
        throw post_selection_impossible("born_measure: outcome probability below eps_ps");
    return {p, B.eigenvectors[f]};
}

std::pair<double, cvec> born_measure_projector(const cvec& psi, const Matrix& Pi) {
    if (Pi.dim != psi.size()) throw contract_violation("born_measure_projector: dimension mismatch");
    const cvec proj = apply(Pi, psi);
    const double p = inner(proj, proj).real();
    if (p < kEpsPostSelect)
        throw post_selection_impossible("born_measure_projector: probability below eps_ps");
    return {p, normalized(proj)};
}

std::pair<PointerState, double> post_select(const JointState& J,
                                            const SpectralDecomposition& B, std::size_t f,
                                            const Matrix& U_fw) {
    if (f >= B.dim()) throw contract_violation("post_select: outcome index out of range");
    if (B.dim() != J.sys_dim || U_fw.dim != J.sys_dim)
        throw contract_violation("post_select: dimension mismatch");
    if (!is_unitary(U_fw)) throw contract_violation("post_select: U_fw not unitary");

    // <b_f(t_w)| = <b_f| U_fw = (U_fw^dagger |b_f>)^dagger
    const cvec bw = apply(adjoint(U_fw), B.eigenvectors[f]);
    PointerState out{J.grid, cvec(J.grid.n_points)};
    for (std::size_t i = 0; i < J.sys_dim; ++i) {
        const cplx w = std::conj(bw[i]);
        if (w == cplx{}) continue;
        for (std::size_t xi = 0; xi < J.grid.n_points; ++xi)
            out.values[xi] += w * J.at(i, xi);
    }
    const double p = out.squared_norm();
    if (p < kEpsPostSelect)
        throw post_selection_impossible("post_select: probability below eps_ps");
    return {std::move(out), p};
}

namespace {

void validate_projector_set(const std::vector<Matrix>& projectors, std::size_t dim) {
    Matrix sum(dim);
    for (std::size_t j = 0; j < projectors.size(); ++j) {
        const Matrix& Pj = projectors[j];
        if (Pj.dim != dim) throw contract_violation("projector set: dimension mismatch");
        if (!is_hermitian(Pj, 1e-10))
            throw contract_violation("projector set: member not Hermitian");
        for (std::size_t k = 0; k < projectors.size(); ++k) {
            const Matrix prod = matmul(Pj, projectors[k]);
            const Matrix expect = (j == k) ? Pj : Matrix(dim);
            if (max_abs_diff(prod, expect) > 1e-10)
                throw contract_violation("projector set: not mutually orthogonal idempotents");
        }
        sum = sum + Pj;
    }
    if (max_abs_diff(sum, Matrix::identity(dim)) > 1e-10)
        throw contract_violation("projector set: does not resolve the identity");
}

} // namespace

double abl_probability(const cvec& pre, const cvec& post,
                       const std::vector<Matrix>& projectors, std::size_t n) {
    if (n >= projectors.size()) throw contract_violation("abl_probability: index out of range");
    if (pre.size() != post.size()) throw contract_violation("abl_probability: dimension mismatch");
    validate_projector_set(projectors, pre.size());

    // Modulus squared in numerator and denominator alike.
    double denom = 0.0, num = 0.0;
    for (std::size_t k = 0; k < projectors.size(); ++k) {
        const double term = std::norm(inner(post, apply(projectors[k], pre)));
        denom += term;
        if (k == n) num = term;
    }
    if (denom < kEpsPostSelect)
        throw undefined_conditional("abl_probability: vanishing denominator");
    return num / denom;
}

} // namespace wvlab
