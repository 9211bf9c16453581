#include "wvlab/pointer.hpp"

#include <cmath>
#include <numbers>

namespace wvlab {

namespace {
constexpr double kPi = std::numbers::pi;

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
} // namespace

double GridSpec::p(std::size_t j) const {
    // wrap j to (-n/2, n/2]
    const auto n = static_cast<long long>(n_points);
    long long k = static_cast<long long>(j);
    if (k > n / 2) k -= n;
    return 2.0 * kPi * static_cast<double>(k) / extent;
}

double GridSpec::p_max() const {
    return kPi * static_cast<double>(n_points) / extent;
}

void validate(const GridSpec& grid) {
    if (!power_of_two(grid.n_points))
        throw configuration_error("GridSpec: n_points must be a power of two");
    if (!(grid.extent > 0.0))
        throw configuration_error("GridSpec: extent must be positive");
}

double PointerState::squared_norm() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return s * grid.dx();
}

bool PointerState::normalized(double tol) const {
    return std::abs(squared_norm() - 1.0) <= tol;
}

double PointerState::boundary_leakage() const {
    const std::size_t n = values.size();
    double total = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::norm(values[i]);
        total += w;
        if (i < 2 || i >= n - 2) edge += w;
    }
    if (total <= 0.0) throw degenerate_state_error("boundary_leakage: zero-norm state");
    return edge / total;
}

PointerState renormalized(const PointerState& phi) {
    const double n2 = phi.squared_norm();
    if (n2 <= 0.0) throw degenerate_state_error("renormalized: zero-norm state");
    PointerState r = phi;
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : r.values) v *= inv;
    return r;
}

PointerState make_gaussian(const GridSpec& grid, double x0, double sigma) {
    validate(grid);
    if (sigma < 4.0 * grid.dx())
        throw configuration_error("make_gaussian: sigma below resolution guard 4*dx");
    if (std::abs(x0) > 0.25 * grid.extent)
        throw configuration_error("make_gaussian: x0 outside central half of grid");
    PointerState phi{grid, cvec(grid.n_points)};
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double d = grid.x(i) - x0;
        phi.values[i] = std::exp(-d * d / (4.0 * sigma * sigma));
    }
    const double n2 = phi.squared_norm();
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : phi.values) v *= inv;
    return phi;
}

namespace detail {

void fft(cvec& v, bool inverse) {
    const std::size_t n = v.size();
    if (!power_of_two(n)) throw contract_violation("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx w = std::polar(1.0, ang * static_cast<double>(k));
                const cplx a = v[i + k];
                const cplx b = v[i + k + len / 2] * w;
                v[i + k] = a + b;
                v[i + k + len / 2] = a - b;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : v) x *= inv;
    }
}

} // namespace detail

cvec momentum_representation(const PointerState& phi) {
    cvec hat = phi.values;
    detail::fft(hat, false);
    return hat;
}

namespace {

// Apply a per-mode momentum-space factor f(p_j).
template <typename F>
PointerState momentum_kernel(const PointerState& phi, F&& factor) {
    cvec hat = phi.values;
    detail::fft(hat, false);
    for (std::size_t j = 0; j < hat.size(); ++j) hat[j] *= factor(phi.grid.p(j));
    detail::fft(hat, true);
    return PointerState{phi.grid, std::move(hat)};
}

} // namespace

PointerState translate(const PointerState& phi, double s) {
    if (std::abs(s) >= 0.25 * phi.grid.extent)
        throw range_guard_error("translate: |s| >= L/4 wraparound guard");
    if (s == 0.0) return phi;
    return momentum_kernel(phi, [s](double p) { return std::polar(1.0, -s * p); });
}

PointerState apply_exp_cP(const PointerState& phi, cplx c) {
    if (std::abs(c.real()) * phi.grid.p_max() > 30.0)
        throw range_guard_error("apply_exp_cP: momentum weight overflow guard");
    if (std::abs(c.imag()) >= 0.25 * phi.grid.extent)
        throw range_guard_error("apply_exp_cP: translation wraparound guard");
    if (c == cplx{}) return phi;
    return momentum_kernel(phi, [c](double p) { return std::exp(c * p); });
}

Moments moments(const PointerState& phi) {
    const std::size_t n = phi.values.size();
    double wsum = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::norm(phi.values[i]);
        wsum += w;
        mx += w * phi.grid.x(i);
    }
    if (wsum * phi.grid.dx() < 1e-300)
        throw degenerate_state_error("moments: zero-norm state");
    mx /= wsum;
    double vx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = phi.grid.x(i) - mx;
        vx += std::norm(phi.values[i]) * d * d;
    }
    vx /= wsum;

    const cvec hat = momentum_representation(phi);
    double hsum = 0.0, mp = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(hat[j]);
        hsum += w;
        mp += w * phi.grid.p(j);
    }
    mp /= hsum;
    double vp = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = phi.grid.p(j) - mp;
        vp += std::norm(hat[j]) * d * d;
    }
    vp /= hsum;

    return Moments{mx, vx, mp, vp};
}

} // namespace wvlab
