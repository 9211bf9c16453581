#include "wvlab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wvlab {

Matrix::Matrix(std::size_t d, std::initializer_list<cplx> entries) : dim(d), a(entries) {
    if (a.size() != d * d)
        throw contract_violation("Matrix: initializer size does not match dim*dim");
}

Matrix Matrix::identity(std::size_t d) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

Matrix adjoint(const Matrix& m) {
    Matrix r(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = 0; j < m.dim; ++j)
            r(j, i) = std::conj(m(i, j));
    return r;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
    if (x.dim != y.dim) throw contract_violation("matmul: dimension mismatch");
    Matrix r(x.dim);
    for (std::size_t i = 0; i < x.dim; ++i)
        for (std::size_t k = 0; k < x.dim; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx{}) continue;
            for (std::size_t j = 0; j < x.dim; ++j)
                r(i, j) += xik * y(k, j);
        }
    return r;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.dim != y.dim) throw contract_violation("matrix add: dimension mismatch");
    Matrix r(x.dim);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.dim != y.dim) throw contract_violation("matrix sub: dimension mismatch");
    Matrix r(x.dim);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

Matrix operator*(cplx s, const Matrix& m) {
    Matrix r(m.dim);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * m.a[i];
    return r;
}

Matrix outer(const cvec& a, const cvec& b) {
    if (a.size() != b.size()) throw contract_violation("outer: dimension mismatch");
    Matrix r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r(i, j) = a[i] * std::conj(b[j]);
    return r;
}

Matrix projector(const cvec& v) { return outer(v, v); }

double max_abs_diff(const Matrix& x, const Matrix& y) {
    if (x.dim != y.dim) throw contract_violation("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

bool is_hermitian(const Matrix& m, double tol) {
    for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = i; j < m.dim; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

bool is_unitary(const Matrix& m, double tol) {
    return max_abs_diff(matmul(adjoint(m), m), Matrix::identity(m.dim)) <= tol;
}

cplx inner(const cvec& a, const cvec& b) {
    if (a.size() != b.size()) throw contract_violation("inner: dimension mismatch");
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm(const cvec& v) { return std::sqrt(inner(v, v).real()); }

cvec normalized(const cvec& v) {
    const double n = norm(v);
    if (n <= 0.0) throw degenerate_state_error("normalized: zero-norm state");
    cvec r(v);
    for (auto& x : r) x /= n;
    return r;
}

bool is_normalized(const cvec& v, double tol) {
    return std::abs(inner(v, v).real() - 1.0) <= tol;
}

cvec apply(const Matrix& m, const cvec& psi) {
    if (m.dim != psi.size()) throw contract_violation("apply: dimension mismatch");
    cvec r(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i) {
        cplx s{};
        for (std::size_t j = 0; j < m.dim; ++j) s += m(i, j) * psi[j];
        r[i] = s;
    }
    return r;
}

cvec tensor(const cvec& a, const cvec& b) {
    if (a.empty() || b.empty()) throw contract_violation("tensor: empty factor");
    if (a.size() > kMaxJointDim / b.size())
        throw capacity_error("tensor: joint dimension exceeds cap");
    cvec r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i * b.size() + j] = a[i] * b[j];
    return r;
}

double expectation(const Matrix& A, const cvec& psi) {
    if (A.dim != psi.size()) throw contract_violation("expectation: dimension mismatch");
    if (!is_hermitian(A)) throw contract_violation("expectation: operator not Hermitian");
    if (!is_normalized(psi)) throw contract_violation("expectation: state not normalized");
    const cplx v = inner(psi, apply(A, psi));
    if (std::abs(v.imag()) > 1e-12)
        throw numeric_error("expectation: imaginary residue above tolerance");
    return v.real();
}

namespace {

double offdiag_frobenius(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = 0; j < m.dim; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

double frobenius(const Matrix& m) {
    double s = 0.0;
    for (const auto& x : m.a) s += std::norm(x);
    return std::sqrt(s);
}

// Multiply a vector by the phase that makes its first significant
// component positive real.
void canonicalize_phase(cvec& v) {
    for (const auto& x : v) {
        if (std::abs(x) > 1e-10) {
            const cplx ph = std::conj(x) / std::abs(x);
            for (auto& y : v) y *= ph;
            return;
        }
    }
}

bool lex_less(const cvec& u, const cvec& v) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].real() != v[i].real()) return u[i].real() < v[i].real();
        if (u[i].imag() != v[i].imag()) return u[i].imag() < v[i].imag();
    }
    return false;
}

} // namespace

SpectralDecomposition eig_hermitian(const Matrix& M) {
    if (M.dim == 0) throw contract_violation("eig_hermitian: empty matrix");
    if (!is_hermitian(M)) throw contract_violation("eig_hermitian: input not Hermitian");

    const std::size_t n = M.dim;
    Matrix A = M;
    // Symmetrize exactly so rounding in the input cannot bias the sweeps.
    for (std::size_t i = 0; i < n; ++i) {
        A(i, i) = cplx(A(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (A(i, j) + std::conj(A(j, i)));
            A(i, j) = v;
            A(j, i) = std::conj(v);
        }
    }
    Matrix E = Matrix::identity(n);  // columns accumulate eigenvectors

    const double target = 1e-14 * std::max(frobenius(A), 1e-300);
    const int max_sweeps = 100;
    int sweep = 0;
    while (offdiag_frobenius(A) > target) {
        if (++sweep > max_sweeps)
            throw numeric_error("eig_hermitian: no convergence, off-diagonal residual " +
                                std::to_string(offdiag_frobenius(A)));
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = A(p, q);
                const double h = std::abs(apq);
                if (h <= 1e-300) continue;
                const cplx u = apq / h;  // phase of the pivot
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const double theta = (aqq - app) / (2.0 * h);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx su = s * std::conj(u);

                A(p, p) = cplx(app - t * h, 0.0);
                A(q, q) = cplx(aqq + t * h, 0.0);
                A(p, q) = cplx{};
                A(q, p) = cplx{};
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const cplx arp = A(r, p);
                    const cplx arq = A(r, q);
                    A(r, p) = c * arp - su * arq;
                    A(r, q) = s * arp + c * std::conj(u) * arq;
                    A(p, r) = std::conj(A(r, p));
                    A(q, r) = std::conj(A(r, q));
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx erp = E(r, p);
                    const cplx erq = E(r, q);
                    E(r, p) = c * erp - su * erq;
                    E(r, q) = s * erp + c * std::conj(u) * erq;
                }
            }
        }
    }

    struct Pair { double val; cvec vec; };
    std::vector<Pair> pairs(n);
    for (std::size_t k = 0; k < n; ++k) {
        pairs[k].val = A(k, k).real();
        pairs[k].vec.resize(n);
        for (std::size_t r = 0; r < n; ++r) pairs[k].vec[r] = E(r, k);
        canonicalize_phase(pairs[k].vec);
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        if (x.val != y.val) return x.val < y.val;
        return lex_less(x.vec, y.vec);
    });

    SpectralDecomposition dec;
    dec.eigenvalues.reserve(n);
    dec.eigenvectors.reserve(n);
    for (auto& p : pairs) {
        dec.eigenvalues.push_back(p.val);
        dec.eigenvectors.push_back(std::move(p.vec));
    }
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (dec.eigenvalues[k + 1] - dec.eigenvalues[k] < kDegeneracyTol)
            dec.degenerate = true;
    return dec;
}

std::vector<std::pair<double, Matrix>> spectral_projectors(
    const SpectralDecomposition& dec, double tol) {
    std::vector<std::pair<double, Matrix>> groups;
    const std::size_t n = dec.dim();
    std::size_t k = 0;
    while (k < n) {
        std::size_t j = k;
        double vsum = 0.0;
        Matrix P(n);
        while (j < n && dec.eigenvalues[j] - dec.eigenvalues[k] < tol) {
            P = P + projector(dec.eigenvectors[j]);
            vsum += dec.eigenvalues[j];
            ++j;
        }
        groups.emplace_back(vsum / static_cast<double>(j - k), std::move(P));
        k = j;
    }
    return groups;
}

std::vector<cvec> complete_basis(const cvec& first) {
    const std::size_t n = first.size();
    if (!is_normalized(first, 1e-10))
        throw contract_violation("complete_basis: state not normalized");
    std::vector<cvec> basis;
    basis.push_back(normalized(first));
    for (std::size_t i = 0; i < n && basis.size() < n; ++i) {
        cvec v(n);
        v[i] = 1.0;
        for (const auto& b : basis) {
            const cplx c = inner(b, v);
            for (std::size_t r = 0; r < n; ++r) v[r] -= c * b[r];
        }
        if (norm(v) > 1e-6) basis.push_back(normalized(v));
    }
    if (basis.size() != n)
        throw numeric_error("complete_basis: failed to complete orthonormal basis");
    return basis;
}

} // namespace wvlab
