#include <doctest.h>

#include "test_util.hpp"
#include "wvlab/hilbert.hpp"

using namespace wvlab;
using testutil::random_hermitian;
using testutil::random_state;
using testutil::random_unitary;

TEST_CASE("inner product is conjugate-linear in the first slot") {
    const cvec a{cplx(1, 2), cplx(0, -1)};
    const cvec b{cplx(3, 0), cplx(1, 1)};
    const cplx ab = inner(a, b);
    CHECK(ab == std::conj(inner(b, a)));
    CHECK(inner(a, a).real() == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(inner(a, a).imag() == doctest::Approx(0.0));
}

TEST_CASE("normalized and is_normalized") {
    const cvec v{cplx(3, 0), cplx(4, 0)};
    const cvec n = normalized(v);
    CHECK(is_normalized(n));
    CHECK(n[0].real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_THROWS_AS(normalized(cvec{cplx(0, 0)}), degenerate_state_error);
}

TEST_CASE("tensor product: explicit 2x2 example and norm factorization") {
    const cvec a{cplx(1, 0), cplx(0, 1)};
    const cvec b{cplx(2, 0), cplx(0, 0)};
    const cvec t = tensor(a, b);
    REQUIRE(t.size() == 4);
    CHECK(t[0] == cplx(2, 0));
    CHECK(t[1] == cplx(0, 0));
    CHECK(t[2] == cplx(0, 2));
    CHECK(t[3] == cplx(0, 0));

    std::mt19937_64 rng(11);
    const cvec u = random_state(rng, 3);
    const cvec w = random_state(rng, 5);
    CHECK(norm(tensor(u, w)) == doctest::Approx(norm(u) * norm(w)).epsilon(1e-13));
}

TEST_CASE("tensor product is associative up to flattening") {
    std::mt19937_64 rng(12);
    const cvec a = random_state(rng, 2);
    const cvec b = random_state(rng, 3);
    const cvec c = random_state(rng, 2);
    const cvec lhs = tensor(tensor(a, b), c);
    const cvec rhs = tensor(a, tensor(b, c));
    for (std::size_t i = 0; i < lhs.size(); ++i)
        CHECK(std::abs(lhs[i] - rhs[i]) < 1e-14);
}

TEST_CASE("tensor dimension cap") {
    const cvec big(std::size_t{1} << 11, cplx(1, 0));
    CHECK_THROWS_AS(tensor(big, big), capacity_error);
}

TEST_CASE("matmul, adjoint, projector basics") {
    Matrix sx(2, {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)});
    Matrix sy(2, {cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0)});
    // sx * sy = i sz
    const Matrix prod = matmul(sx, sy);
    CHECK(std::abs(prod(0, 0) - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(prod(1, 1) - cplx(0, -1)) < 1e-15);
    CHECK(max_abs_diff(adjoint(sy), sy) < 1e-15);

    const cvec plus = normalized(cvec{cplx(1, 0), cplx(1, 0)});
    const Matrix pi = projector(plus);
    CHECK(max_abs_diff(matmul(pi, pi), pi) < 1e-15);
    CHECK(is_hermitian(pi));
}

TEST_CASE("is_unitary accepts rotations and rejects scalings") {
    std::mt19937_64 rng(13);
    const Matrix u = random_unitary(rng, 4);
    CHECK(is_unitary(u));
    CHECK(!is_unitary(cplx(2, 0) * u));
}

TEST_CASE("unitaries preserve inner products") {
    std::mt19937_64 rng(14);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t d = 2 + static_cast<std::size_t>(rep % 4);
        const Matrix u = random_unitary(rng, d);
        const cvec a = random_state(rng, d);
        const cvec b = random_state(rng, d);
        CHECK(std::abs(inner(apply(u, a), apply(u, b)) - inner(a, b)) < 1e-12);
    }
}

TEST_CASE("expectation validates its contract") {
    Matrix sz(2, {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0)});
    const cvec up{cplx(1, 0), cplx(0, 0)};
    CHECK(expectation(sz, up) == doctest::Approx(1.0));
    Matrix nonherm(2, {cplx(0, 0), cplx(1, 0), cplx(0, 0), cplx(0, 0)});
    CHECK_THROWS_AS(expectation(nonherm, up), contract_violation);
    CHECK_THROWS_AS(expectation(sz, cvec{cplx(2, 0), cplx(0, 0)}), contract_violation);
}

TEST_CASE("eig_hermitian: diagonal matrix sorts eigenvalues ascending") {
    Matrix m(3);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    const auto dec = eig_hermitian(m);
    CHECK(dec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dec.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dec.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(std::abs(dec.eigenvectors[0][1] - cplx(1, 0)) < 1e-14);
    CHECK(!dec.degenerate);
}

TEST_CASE("eig_hermitian: sigma_x eigenpairs") {
    Matrix sx(2, {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)});
    const auto dec = eig_hermitian(sx);
    CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    const double inv = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(dec.eigenvectors[1][0] - cplx(inv, 0)) < 1e-13);
    CHECK(std::abs(dec.eigenvectors[1][1] - cplx(inv, 0)) < 1e-13);
}

TEST_CASE("eig_hermitian: random 5x5 reconstruction and orthonormality") {
    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix m = random_hermitian(rng, 5);
        const auto dec = eig_hermitian(m);
        Matrix rebuilt(5);
        for (std::size_t k = 0; k < 5; ++k) {
            const Matrix pk = projector(dec.eigenvectors[k]);
            rebuilt = rebuilt + cplx(dec.eigenvalues[k], 0.0) * pk;
        }
        CHECK(max_abs_diff(rebuilt, m) < 1e-10);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                const cplx ov = inner(dec.eigenvectors[i], dec.eigenvectors[j]);
                CHECK(std::abs(ov - (i == j ? cplx(1, 0) : cplx(0, 0))) < 1e-11);
            }
    }
}

TEST_CASE("eig_hermitian flags degeneracy and rejects non-Hermitian input") {
    const Matrix id = Matrix::identity(3);
    CHECK(eig_hermitian(id).degenerate);
    Matrix bad(2, {cplx(0, 0), cplx(1, 0), cplx(2, 0), cplx(0, 0)});
    CHECK_THROWS_AS(eig_hermitian(bad), contract_violation);
}

TEST_CASE("spectral_projectors group repeated eigenvalues and sum to identity") {
    Matrix m(3);
    m(0, 0) = 2.0;
    m(1, 1) = 2.0;
    m(2, 2) = 5.0;
    const auto groups = spectral_projectors(eig_hermitian(m));
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].first == doctest::Approx(2.0));
    CHECK(groups[1].first == doctest::Approx(5.0));
    Matrix sum(3);
    for (const auto& [val, pi] : groups) {
        sum = sum + pi;
        CHECK(max_abs_diff(matmul(pi, pi), pi) < 1e-12);
    }
    CHECK(max_abs_diff(sum, Matrix::identity(3)) < 1e-12);
}

TEST_CASE("complete_basis yields an orthonormal frame starting at the seed") {
    std::mt19937_64 rng(16);
    const cvec seed = random_state(rng, 4);
    const auto basis = complete_basis(seed);
    REQUIRE(basis.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(seed[i] - basis[0][i]) < 1e-14);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(inner(basis[i], basis[j]) - (i == j ? cplx(1, 0) : cplx(0, 0))) <
                  1e-12);
}
