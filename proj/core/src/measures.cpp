#include "mig/measures.hpp"

#include <cmath>
#include <sstream>

namespace mig {

std::string to_string(Measure m) {
    switch (m) {
    case Measure::airm:
        return "airm";
    case Measure::lem:
        return "lem";
    case Measure::jbld:
        return "jbld";
    case Measure::skld:
        return "skld";
    }
    throw UsageError("to_string: unknown measure");
}

Measure measure_from_string(const std::string& name) {
    if (name == "airm")
        return Measure::airm;
    if (name == "lem")
        return Measure::lem;
    if (name == "jbld")
        return Measure::jbld;
    if (name == "skld")
        return Measure::skld;
    throw UsageError("unknown measure '" + name + "' (expected airm, lem, jbld, or skld)");
}

double clamp_dist_sq(double d_sq) {
    if (d_sq >= 0.0)
        return d_sq;
    if (d_sq > -1e-12)
        return 0.0;
    std::ostringstream msg;
    msg << "squared measure is negative beyond roundoff: " << d_sq;
    throw NumericalError(msg.str());
}

double airm_dist_sq(const HpdMatrix& x, const HpdMatrix& y) {
    // Eigenvalues of the pencil (Y, X) equal those of X^{-1/2} Y X^{-1/2}.
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> solver(y.m(), x.m());
    if (solver.info() != Eigen::Success)
        throw NumericalError("airm_dist_sq: generalized eigensolver failed to converge");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (!(lambda > 0.0))
            throw NumericalError("airm_dist_sq: nonpositive generalized eigenvalue");
        const double t = std::log(lambda);
        acc += t * t;
    }
    return clamp_dist_sq(acc);
}

double lem_dist_sq(const HermitianMatrix& log_x, const HermitianMatrix& log_y) {
    return clamp_dist_sq((log_x.m() - log_y.m()).squaredNorm());
}

double jbld_dist_sq(const CMatrix& x, const CMatrix& y, double log_det_x, double log_det_y) {
    const CMatrix mid = 0.5 * (x + y);
    return clamp_dist_sq(log_det(mid) - 0.5 * (log_det_x + log_det_y));
}

double skld_dist_sq(const CMatrix& x, const CMatrix& x_inv, const CMatrix& y,
                    const CMatrix& y_inv) {
    const double n = static_cast<double>(x.rows());
    const double tr = (y_inv * x).trace().real() + (x_inv * y).trace().real();
    return clamp_dist_sq(tr - 2.0 * n);
}

double dist_sq(Measure m, const HpdMatrix& x, const HpdMatrix& y) {
    if (x.dim() != y.dim())
        throw UsageError("dist_sq: dimension mismatch");
    switch (m) {
    case Measure::airm:
        return airm_dist_sq(x, y);
    case Measure::lem:
        return lem_dist_sq(log_m(x), log_m(y));
    case Measure::jbld:
        return jbld_dist_sq(x.m(), y.m(), log_det(x.m()), log_det(y.m()));
    case Measure::skld: {
        const CMatrix x_inv = inv_m(x).m();
        const CMatrix y_inv = inv_m(y).m();
        return skld_dist_sq(x.m(), x_inv, y.m(), y_inv);
    }
    }
    throw UsageError("dist_sq: unknown measure");
}

double dist(Measure m, const HpdMatrix& x, const HpdMatrix& y) {
    return std::sqrt(dist_sq(m, x, y));
}

} // namespace mig
