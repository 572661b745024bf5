#include "mig/hpd.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace mig {

double pd_floor(const CMatrix& a) {
    const double mean_eig = a.trace().real() / static_cast<double>(a.rows());
    return 1e-12 * mean_eig;
}

HermitianMatrix::HermitianMatrix(const CMatrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw UsageError("HermitianMatrix: expected a nonempty square matrix");
    m_ = 0.5 * (a + a.adjoint().eval());
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
    return HermitianMatrix(CMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
    return HermitianMatrix(CMatrix::Identity(n, n));
}

HpdMatrix::HpdMatrix(const HermitianMatrix& h) : h_(h) {
    const SpectralDecomposition eig = herm_eig(h);
    const double min_eig = eig.eigenvalues(0);
    const double floor = pd_floor(h.m());
    if (!(min_eig > floor)) {
        std::ostringstream msg;
        msg << "matrix is not positive definite: min eigenvalue " << min_eig
            << " <= floor " << floor;
        throw NotPositiveDefiniteError(msg.str());
    }
}

HpdMatrix HpdMatrix::trusted(HermitianMatrix h) {
    return HpdMatrix(std::move(h), trusted_tag{});
}

HpdMatrix HpdMatrix::identity(Eigen::Index n) {
    return HpdMatrix::trusted(HermitianMatrix::identity(n));
}

namespace {

SpectralDecomposition herm_eig_impl(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "Hermitian eigensolver failed to converge on a " << m.rows() << "x" << m.cols()
            << " matrix (|A|_F = " << m.norm() << ")";
        throw NumericalError(msg.str());
    }
    return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace

SpectralDecomposition herm_eig(const HermitianMatrix& a) {
    return herm_eig_impl(a.m());
}

SpectralDecomposition herm_eig(const HpdMatrix& a) {
    return herm_eig_impl(a.m());
}

HermitianMatrix matrix_fn(const SpectralDecomposition& eig, const std::function<double(double)>& f) {
    RVector mapped(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < mapped.size(); ++i)
        mapped(i) = f(eig.eigenvalues(i));
    const CMatrix result =
        eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
    return HermitianMatrix(result);
}

HermitianMatrix matrix_fn(const HermitianMatrix& a, const std::function<double(double)>& f,
                          bool requires_pd) {
    const SpectralDecomposition eig = herm_eig(a);
    if (requires_pd) {
        const double floor = pd_floor(a.m());
        if (!(eig.eigenvalues(0) > floor)) {
            std::ostringstream msg;
            msg << "spectral function requires a positive definite argument: min eigenvalue "
                << eig.eigenvalues(0) << " <= floor " << floor;
            throw NotPositiveDefiniteError(msg.str());
        }
    }
    return matrix_fn(eig, f);
}

HermitianMatrix log_m(const HpdMatrix& a) {
    return matrix_fn(herm_eig(a), [](double x) { return std::log(x); });
}

HermitianMatrix log_m(const HermitianMatrix& a) {
    return matrix_fn(a, [](double x) { return std::log(x); }, /*requires_pd=*/true);
}

HpdMatrix exp_m(const HermitianMatrix& a) {
    return HpdMatrix::trusted(matrix_fn(a, [](double x) { return std::exp(x); }));
}

HpdMatrix sqrt_m(const HpdMatrix& a) {
    return HpdMatrix::trusted(matrix_fn(herm_eig(a), [](double x) { return std::sqrt(x); }));
}

HpdMatrix inv_sqrt_m(const HpdMatrix& a) {
    return HpdMatrix::trusted(
        matrix_fn(herm_eig(a), [](double x) { return 1.0 / std::sqrt(x); }));
}

HpdMatrix inv_m(const HpdMatrix& a) {
    return HpdMatrix::trusted(matrix_fn(herm_eig(a), [](double x) { return 1.0 / x; }));
}

double log_det(const CMatrix& a) {
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefiniteError("log_det: Cholesky factorization failed");
    double acc = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        acc += std::log(l(i, i).real());
    return 2.0 * acc;
}

HpdMatrix diagonally_loaded(const HermitianMatrix& a) {
    const SpectralDecomposition eig = herm_eig(a);
    if (eig.eigenvalues(0) > pd_floor(a.m()))
        return HpdMatrix::trusted(a);
    const Eigen::Index n = a.dim();
    const double mean_diag = a.m().trace().real() / static_cast<double>(n);
    const CMatrix loaded = a.m() + (1e-9 * mean_diag) * CMatrix::Identity(n, n);
    return HpdMatrix(HermitianMatrix(loaded));
}

HpdMatrix toeplitz_estimate(const SampleVector& x) {
    const Eigen::Index n = x.size();
    if (n == 0)
        throw UsageError("toeplitz_estimate: empty sample vector");
    if (x.isZero(0.0))
        throw DegenerateSampleError("toeplitz_estimate: sample vector is identically zero");

    CVector r(n); // r(l) = (1/n) sum_{i=0}^{n-1-l} x_i conj(x_{i+l})
    for (Eigen::Index l = 0; l < n; ++l) {
        Complex acc(0.0, 0.0);
        for (Eigen::Index i = 0; i + l < n; ++i)
            acc += x(i) * std::conj(x(i + l));
        r(l) = acc / static_cast<double>(n);
    }

    CMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            a(j, k) = (j >= k) ? r(j - k) : std::conj(r(k - j));

    // Theoretically PSD; numerically singular estimates (e.g. a single
    // nonzero pulse) get a small relative diagonal load.
    return diagonally_loaded(HermitianMatrix(a));
}

} // namespace mig
