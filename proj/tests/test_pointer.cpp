#include <doctest.h>

#include <cmath>

#include "wvlab/pointer.hpp"

using namespace wvlab;

namespace {
const GridSpec kGrid{};
} // namespace

TEST_CASE("grid spacing, positions and wrapped momenta") {
    CHECK(kGrid.dx() == doctest::Approx(40.0 / 1024.0));
    CHECK(kGrid.x(0) == doctest::Approx(-20.0));
    CHECK(kGrid.x(512) == doctest::Approx(0.0));
    CHECK(kGrid.p(0) == doctest::Approx(0.0));
    CHECK(kGrid.p(1) == doctest::Approx(2.0 * M_PI / 40.0));
    CHECK(kGrid.p(1023) == doctest::Approx(-2.0 * M_PI / 40.0));
    CHECK(kGrid.p(512) > 0.0);
    CHECK_THROWS_AS(validate(GridSpec{1000, 40.0}), configuration_error);
    CHECK_THROWS_AS(validate(GridSpec{1024, -1.0}), configuration_error);
}

TEST_CASE("gaussian pointer is normalized with the stated moments") {
    for (double sigma : {0.5, 1.0, 2.0}) {
        const PointerState phi = make_gaussian(kGrid, 1.5, sigma);
        CHECK(phi.normalized());
        const Moments m = moments(phi);
        CHECK(m.mean_x == doctest::Approx(1.5).epsilon(1e-10));
        CHECK(m.var_x == doctest::Approx(sigma * sigma).epsilon(1e-8));
        CHECK(m.mean_p == doctest::Approx(0.0).epsilon(1e-10));
        // minimum-uncertainty packet: Var(P) = 1/(4 sigma^2)
        CHECK(m.var_p == doctest::Approx(1.0 / (4.0 * sigma * sigma)).epsilon(1e-2));
        CHECK(phi.boundary_leakage() < 1e-14);
    }
}

TEST_CASE("gaussian guards on width and center") {
    CHECK_THROWS_AS(make_gaussian(kGrid, 0.0, 0.1), configuration_error);
    CHECK_THROWS_AS(make_gaussian(kGrid, 15.0, 1.0), configuration_error);
}

TEST_CASE("translate shifts the mean and composes as a group") {
    const PointerState phi = make_gaussian(kGrid, 0.0, 1.0);
    const PointerState shifted = translate(phi, 2.5);
    CHECK(moments(shifted).mean_x == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(shifted.normalized());

    const PointerState twice = translate(translate(phi, 1.0), 1.5);
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        CHECK(std::abs(twice.values[i] - shifted.values[i]) < 1e-12);

    const PointerState back = translate(shifted, -2.5);
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        CHECK(std::abs(back.values[i] - phi.values[i]) < 1e-12);

    CHECK_THROWS_AS(translate(phi, 11.0), range_guard_error);
}

TEST_CASE("apply_exp_cP with c = 0 is the identity") {
    const PointerState phi = make_gaussian(kGrid, -1.0, 1.0);
    const PointerState same = apply_exp_cP(phi, cplx(0, 0));
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        CHECK(std::abs(same.values[i] - phi.values[i]) < 1e-14);
}

TEST_CASE("apply_exp_cP with imaginary c reproduces translate") {
    const PointerState phi = make_gaussian(kGrid, 0.5, 1.0);
    const PointerState a = apply_exp_cP(phi, cplx(0.0, -3.0));
    const PointerState b = translate(phi, 3.0);
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        CHECK(std::abs(a.values[i] - b.values[i]) < 1e-12);
}

TEST_CASE("apply_exp_cP with real c shifts the gaussian momentum mean") {
    // exp(cP) on a real gaussian reweights momenta: mean p moves to 2 c Var(P).
    const double sigma = 1.0;
    const double c = 0.2;
    const PointerState phi = make_gaussian(kGrid, 0.0, sigma);
    const PointerState tilted = apply_exp_cP(phi, cplx(c, 0.0));
    const Moments m = moments(tilted);
    CHECK(m.mean_p == doctest::Approx(2.0 * c / (4.0 * sigma * sigma)).epsilon(1e-6));
    CHECK_THROWS_AS(apply_exp_cP(phi, cplx(1000.0, 0.0)), range_guard_error);
}

TEST_CASE("fft round trip is lossless") {
    const PointerState phi = make_gaussian(kGrid, 2.0, 0.7);
    cvec v = phi.values;
    detail::fft(v, false);
    detail::fft(v, true);
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(std::abs(v[i] - phi.values[i]) < 1e-13);
}

TEST_CASE("momentum representation of a plane-wave-modulated gaussian peaks at the boost") {
    PointerState phi = make_gaussian(kGrid, 0.0, 2.0);
    const double k0 = kGrid.p(8);
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        phi.values[i] *= std::polar(1.0, k0 * kGrid.x(i));
    const Moments m = moments(phi);
    CHECK(m.mean_p == doctest::Approx(k0).epsilon(1e-10));
}

TEST_CASE("moments rejects the zero state") {
    PointerState zero{kGrid, cvec(kGrid.n_points)};
    CHECK_THROWS_AS(moments(zero), degenerate_state_error);
}
