#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "mig/errors.hpp"

namespace mig {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// One range cell's pulse returns (x_0, ..., x_{n-1}).
using SampleVector = Eigen::VectorXcd;

/// Eigenvalues below pd_floor(A) disqualify A from the HPD manifold.
/// The floor scales with the mean eigenvalue so the test is unit-free.
double pd_floor(const CMatrix& a);

/// Complex square matrix with A = A^H enforced bit-exactly at construction.
class HermitianMatrix {
public:
    /// Symmetrizes the input: (A + A^H)/2, which also zeroes diagonal
    /// imaginary parts exactly.
    explicit HermitianMatrix(const CMatrix& a);

    static HermitianMatrix zero(Eigen::Index n);
    static HermitianMatrix identity(Eigen::Index n);

    const CMatrix& m() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    CMatrix m_;
};

/// Point on the manifold of Hermitian positive-definite matrices.
class HpdMatrix {
public:
    /// Validates min eigenvalue > pd_floor; throws NotPositiveDefiniteError.
    explicit HpdMatrix(const CMatrix& a) : HpdMatrix(HermitianMatrix(a)) {}
    explicit HpdMatrix(const HermitianMatrix& h);

    /// Wraps a matrix that is positive definite by construction
    /// (convex combination of HPD, exp of Hermitian, ...). No spectral check.
    static HpdMatrix trusted(HermitianMatrix h);

    static HpdMatrix identity(Eigen::Index n);

    const CMatrix& m() const noexcept { return h_.m(); }
    const HermitianMatrix& herm() const noexcept { return h_; }
    Eigen::Index dim() const noexcept { return h_.dim(); }

private:
    struct trusted_tag {};
    HpdMatrix(HermitianMatrix h, trusted_tag) : h_(std::move(h)) {}
    HermitianMatrix h_;
};

/// A = U diag(eigenvalues) U^H with eigenvalues ascending and U unitary.
struct SpectralDecomposition {
    RVector eigenvalues;
    CMatrix eigenvectors;
};

/// Hermitian eigendecomposition. Throws NumericalError with condition
/// diagnostics if the solver fails to converge.
SpectralDecomposition herm_eig(const HermitianMatrix& a);
SpectralDecomposition herm_eig(const HpdMatrix& a);

/// U diag(f(lambda_i)) U^H, re-symmetrized.
HermitianMatrix matrix_fn(const SpectralDecomposition& eig, const std::function<double(double)>& f);

/// Spectral application of a scalar function. When `requires_pd` is set the
/// spectrum is checked against pd_floor first (log, sqrt, inv need it).
HermitianMatrix matrix_fn(const HermitianMatrix& a, const std::function<double(double)>& f,
                          bool requires_pd = false);

HermitianMatrix log_m(const HpdMatrix& a);
HermitianMatrix log_m(const HermitianMatrix& a); // checks positivity
HpdMatrix exp_m(const HermitianMatrix& a);
HpdMatrix sqrt_m(const HpdMatrix& a);
HpdMatrix inv_sqrt_m(const HpdMatrix& a);
HpdMatrix inv_m(const HpdMatrix& a);

/// log det A via Cholesky; A must be numerically PD.
double log_det(const CMatrix& a);

/// Promotes a theoretically-PSD Hermitian matrix to HPD. If the matrix is
/// already numerically PD it is wrapped as-is; otherwise a small relative
/// diagonal load 1e-9 * (trace/n) * I is added first.
HpdMatrix diagonally_loaded(const HermitianMatrix& a);

/// Toeplitz autocorrelation estimate of one sample vector:
/// first column r_l = (1/n) sum_i x_i x_{i+l}^*, diagonally loaded with
/// delta * r_0 * I only if the (theoretically PSD) matrix is numerically
/// singular. Throws DegenerateSampleError when x is identically zero.
HpdMatrix toeplitz_estimate(const SampleVector& x);

} // namespace mig
