#pragma once

// Finite-dimensional complex linear algebra for pre/post-selected measurement
// simulations: states, Hermitian observables, spectral decomposition, tensor
// products and expectation values. All quantities use hbar = 1.

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "wvlab/errors.hpp"

namespace wvlab {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Squared amplitudes below this are treated as impossible post-selections.
inline constexpr double kEpsPostSelect = 1e-12;

// Weak values with post-selection probability below this carry a
// divergence warning (large but possibly meaningful amplification regime).
inline constexpr double kPsWarnThreshold = 1e-6;

// Cap on tensor-product dimensions.
inline constexpr std::size_t kMaxJointDim = std::size_t{1} << 20;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kDegeneracyTol = 1e-10;

// Dense square complex matrix, row-major.
struct Matrix {
    std::size_t dim = 0;
    std::vector<cplx> a;

    Matrix() = default;
    explicit Matrix(std::size_t d) : dim(d), a(d * d) {}
    Matrix(std::size_t d, std::initializer_list<cplx> entries);

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * dim + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * dim + j]; }

    static Matrix identity(std::size_t d);
};

Matrix adjoint(const Matrix& m);
Matrix matmul(const Matrix& x, const Matrix& y);
Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
Matrix operator*(cplx s, const Matrix& m);

// |a><b|
Matrix outer(const cvec& a, const cvec& b);
// |v><v|
Matrix projector(const cvec& v);

// max entrywise |x - y|
double max_abs_diff(const Matrix& x, const Matrix& y);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
bool is_unitary(const Matrix& m, double tol = kUnitaryTol);

// <a|b>, conjugate-linear in the first slot.
cplx inner(const cvec& a, const cvec& b);
double norm(const cvec& v);
cvec normalized(const cvec& v);
bool is_normalized(const cvec& v, double tol = 1e-12);

cvec apply(const Matrix& m, const cvec& psi);

// System-major product state: the first factor's index varies slowest.
cvec tensor(const cvec& a, const cvec& b);

// <psi|A|psi> for Hermitian A and a normalized psi.
double expectation(const Matrix& A, const cvec& psi);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;   // ascending
    std::vector<cvec> eigenvectors;    // orthonormal, phase-canonicalized
    bool degenerate = false;           // any two eigenvalues within kDegeneracyTol

    std::size_t dim() const { return eigenvalues.size(); }
};

// Cyclic complex Jacobi diagonalization. Deterministic sweep order,
// convergence when the off-diagonal Frobenius norm drops below 1e-14 * ||M||.
SpectralDecomposition eig_hermitian(const Matrix& M);

// Eigenvalue-grouped spectral projectors (value, projector), values ascending.
// This is the interface degenerate observables must go through.
std::vector<std::pair<double, Matrix>> spectral_projectors(
    const SpectralDecomposition& dec, double tol = kDegeneracyTol);

// Orthonormal basis whose first vector is the given (normalized) state;
// completion by Gram-Schmidt over the canonical basis.
std::vector<cvec> complete_basis(const cvec& first);

} // namespace wvlab
