#include "wvlab/weakcore.hpp"

#include <algorithm>
#include <cmath>

namespace wvlab {

namespace {

void validate_scenario(const WeakScenario& s) {
    const std::size_t d = s.pre.size();
    if (d == 0) throw contract_violation("WeakScenario: empty pre-state");
    if (s.U_wi.dim != d || s.U_fw.dim != d || s.A.dim != d || s.B.dim() != d)
        throw contract_violation("WeakScenario: inconsistent dimensions");
    if (s.f >= s.B.dim()) throw contract_violation("WeakScenario: outcome index out of range");
    if (!is_normalized(s.pre)) throw contract_violation("WeakScenario: pre-state not normalized");
    if (!is_hermitian(s.A)) throw contract_violation("WeakScenario: A not Hermitian");
    if (!is_unitary(s.U_wi) || !is_unitary(s.U_fw))
        throw contract_violation("WeakScenario: unitaries fail the unitarity tolerance");
}

cvec state_at_tw(const WeakScenario& s) { return wvlab::apply(s.U_wi, s.pre); }

// Post-selected state evolved backward to t_w: U_fw^dagger |b_f>.
cvec post_at_tw(const WeakScenario& s) { return wvlab::apply(adjoint(s.U_fw), s.B.eigenvectors[s.f]); }

} // namespace

bool weak_regime(const WeakScenario& s) {
    const SpectralDecomposition dec = eig_hermitian(s.A);
    double amax = 0.0;
    for (double a : dec.eigenvalues) amax = std::max(amax, std::abs(a));
    return std::abs(s.g) * amax <= 0.1 * s.pointer.sigma;
}

WeakValue weak_value(const WeakScenario& s) {
    validate_scenario(s);
    const cvec psi_w = state_at_tw(s);
    const cvec b_w = post_at_tw(s);
    const cplx denom = inner(b_w, psi_w);
    const double p = std::norm(denom);
    if (p < kEpsPostSelect)
        throw post_selection_impossible("weak_value: pre/post overlap below eps_ps");
    const cplx v = inner(b_w, wvlab::apply(s.A, psi_w)) / denom;
    return WeakValue{v, v.real(), v.imag(), p, p < kPsWarnThreshold};
}

std::pair<double, double> weak_value_parts(const WeakScenario& s) {
    validate_scenario(s);
    const cvec psi_w = state_at_tw(s);
    const cvec b_w = post_at_tw(s);
    const Matrix Pi = projector(b_w);
    const Matrix PiA = matmul(Pi, s.A);
    const Matrix APi = matmul(s.A, Pi);
    const double denom = inner(psi_w, wvlab::apply(Pi, psi_w)).real();
    if (denom < kEpsPostSelect)
        throw post_selection_impossible("weak_value_parts: post-selection probability below eps_ps");
    const cplx sym = inner(psi_w, wvlab::apply(PiA + APi, psi_w));
    const cplx comm = inner(psi_w, wvlab::apply(PiA - APi, psi_w));
    const double re = 0.5 * sym.real() / denom;
    // (1/2i)(Pi A - A Pi) averaged: Hermitian combination, real value.
    const double im = 0.5 * comm.imag() / denom;
    return {re, im};
}

std::pair<PointerState, double> weak_protocol_exact(const WeakScenario& s) {
    validate_scenario(s);
    const cvec psi_w = state_at_tw(s);
    const PointerState phi = make_gaussian(s.pointer.grid, s.pointer.x0, s.pointer.sigma);
    const auto spectral = spectral_projectors(eig_hermitian(s.A));
    const JointState J = von_neumann_couple_grouped(psi_w, spectral, phi, s.g);
    return post_select(J, s.B, s.f, s.U_fw);
}

PointerState weak_pointer_prediction(const WeakScenario& s) {
    const WeakValue wv = weak_value(s);
    const PointerState phi = make_gaussian(s.pointer.grid, s.pointer.x0, s.pointer.sigma);
    const cplx prefactor = inner(post_at_tw(s), state_at_tw(s));
    PointerState out = apply_exp_cP(translate(phi, s.g * wv.re), cplx(s.g * wv.im, 0.0));
    for (auto& v : out.values) v *= prefactor;
    return out;
}

std::pair<double, double> extract_weak_value_from_pointer(const PointerState& exact,
                                                          const PointerState& baseline,
                                                          double g) {
    if (g == 0.0) throw contract_violation("extract_weak_value_from_pointer: zero coupling");
    if (!(exact.grid == baseline.grid))
        throw contract_violation("extract_weak_value_from_pointer: grids differ");
    const Moments me = moments(exact);
    const Moments mb = moments(baseline);
    const double re_est = (me.mean_x - mb.mean_x) / g;
    const double im_est = (me.mean_p - mb.mean_p) / (2.0 * g * mb.var_p);
    return {re_est, im_est};
}

std::vector<std::pair<double, WeakValue>> expectation_decomposition(
    const cvec& psi, const Matrix& A, const SpectralDecomposition& B) {
    if (A.dim != psi.size() || B.dim() != psi.size())
        throw contract_violation("expectation_decomposition: dimension mismatch");
    if (!is_hermitian(A)) throw contract_violation("expectation_decomposition: A not Hermitian");
    if (!is_normalized(psi))
        throw contract_violation("expectation_decomposition: state not normalized");
    const cvec Apsi = wvlab::apply(A, psi);
    std::vector<std::pair<double, WeakValue>> out;
    for (std::size_t f = 0; f < B.dim(); ++f) {
        const cplx overlap = inner(B.eigenvectors[f], psi);
        const double p = std::norm(overlap);
        if (p < kEpsPostSelect) continue;  // zero-probability outcomes contribute nothing
        const cplx v = inner(B.eigenvectors[f], Apsi) / overlap;
        out.emplace_back(p, WeakValue{v, v.real(), v.imag(), p, p < kPsWarnThreshold});
    }
    return out;
}

PointerState identical_prepost_pointer(const cvec& psi, const SpectralDecomposition& A,
                                       double g, const PointerState& phi) {
    if (A.dim() != psi.size())
        throw contract_violation("identical_prepost_pointer: dimension mismatch");
    if (!is_normalized(psi))
        throw contract_violation("identical_prepost_pointer: state not normalized");
    PointerState out{phi.grid, cvec(phi.grid.n_points)};
    for (std::size_t k = 0; k < A.dim(); ++k) {
        const double pk = std::norm(inner(A.eigenvectors[k], psi));
        if (pk < 1e-300) continue;
        const PointerState shifted = translate(phi, g * A.eigenvalues[k]);
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] += pk * shifted.values[i];
    }
    return out;
}

MonteCarloResult classical_weak_analogue(const std::function<double(std::mt19937_64&)>& sampler,
                                         const std::function<double(double)>& A_fn,
                                         const std::function<bool(double)>& filter_fn,
                                         std::size_t n_samples, std::uint64_t seed) {
    if (n_samples == 0) throw contract_violation("classical_weak_analogue: no samples");
    std::mt19937_64 rng(seed);
    double sum = 0.0, sumsq = 0.0;
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double q = sampler(rng);
        if (!filter_fn(q)) continue;
        const double a = A_fn(q);
        sum += a;
        sumsq += a * a;
        ++accepted;
    }
    if (accepted == 0) throw empty_filter_error("classical_weak_analogue: filter never fired");
    if (accepted * 1.0 < 10.0)
        throw empty_filter_error("classical_weak_analogue: acceptance below 10 samples");
    const double mean = sum / static_cast<double>(accepted);
    const double var = std::max(0.0, sumsq / static_cast<double>(accepted) - mean * mean);
    const double se = std::sqrt(var / static_cast<double>(accepted));
    return MonteCarloResult{mean, se, accepted, n_samples};
}

CurrentDensityResult current_density_weak_value(const PointerState& psi_x,
                                                std::size_t x_index, double mass) {
    const std::size_t n = psi_x.values.size();
    if (x_index >= n) throw contract_violation("current_density_weak_value: index out of range");
    if (mass <= 0.0) throw contract_violation("current_density_weak_value: non-positive mass");
    double peak = 0.0;
    for (const auto& v : psi_x.values) peak = std::max(peak, std::norm(v));
    const double rho = std::norm(psi_x.values[x_index]);
    if (rho < 1e-10 * peak)
        throw undefined_ratio_error("current_density_weak_value: node at evaluation point");

    // P psi via the momentum representation.
    cvec hat = psi_x.values;
    detail::fft(hat, false);
    for (std::size_t j = 0; j < n; ++j) hat[j] *= psi_x.grid.p(j);
    detail::fft(hat, true);
    const double re_wv = (hat[x_index] / psi_x.values[x_index]).real();

    // Fourth-order central difference for psi' on the periodic grid.
    const double dx = psi_x.grid.dx();
    const auto wrap = [n](std::ptrdiff_t i) {
        return static_cast<std::size_t>(((i % static_cast<std::ptrdiff_t>(n)) +
                                         static_cast<std::ptrdiff_t>(n)) %
                                        static_cast<std::ptrdiff_t>(n));
    };
    const auto v = [&](std::ptrdiff_t i) { return psi_x.values[wrap(i)]; };
    const auto i0 = static_cast<std::ptrdiff_t>(x_index);
    const cplx dpsi = (8.0 * (v(i0 + 1) - v(i0 - 1)) - (v(i0 + 2) - v(i0 - 2))) / (12.0 * dx);
    // j = (1/m) Im(psi* psi'), so m j / rho = Im(psi* psi') / |psi|^2.
    const double current_ratio = (std::conj(psi_x.values[x_index]) * dpsi).imag() / rho;
    return CurrentDensityResult{re_wv, current_ratio};
}

double fidelity(const PointerState& a, const PointerState& b) {
    if (!(a.grid == b.grid)) throw contract_violation("fidelity: grids differ");
    const double na = a.squared_norm();
    const double nb = b.squared_norm();
    if (na <= 0.0 || nb <= 0.0) throw degenerate_state_error("fidelity: zero-norm state");
    cplx ov{};
    for (std::size_t i = 0; i < a.values.size(); ++i)
        ov += std::conj(a.values[i]) * b.values[i];
    ov *= a.grid.dx();
    return std::norm(ov) / (na * nb);
}

double fidelity_deficit(const PointerState& a, const PointerState& b) {
    if (!(a.grid == b.grid)) throw contract_violation("fidelity_deficit: grids differ");
    const PointerState an = renormalized(a);
    const PointerState bn = renormalized(b);
    cplx ov{};
    for (std::size_t i = 0; i < an.values.size(); ++i)
        ov += std::conj(an.values[i]) * bn.values[i];
    ov *= a.grid.dx();
    // Orthogonal residual of b relative to a; avoids the 1 - |ov|^2
    // cancellation when the states nearly coincide.
    double r2 = 0.0;
    for (std::size_t i = 0; i < an.values.size(); ++i)
        r2 += std::norm(bn.values[i] - ov * an.values[i]);
    r2 *= a.grid.dx();
    return std::sqrt(std::max(0.0, r2));
}

double fit_loglog_slope(std::span<const double> g, std::span<const double> residual) {
    if (g.size() != residual.size() || g.size() < 2)
        throw contract_violation("fit_loglog_slope: need matching series of length >= 2");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(g[i] > 0.0) || !(residual[i] > 0.0))
            throw contract_violation("fit_loglog_slope: non-positive datum");
        const double x = std::log10(g[i]);
        const double y = std::log10(residual[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace wvlab
