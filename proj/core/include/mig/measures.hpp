#pragma once

#include <string>

#include "mig/hpd.hpp"

namespace mig {

/// Geometric measures on the HPD manifold.
enum class Measure {
    airm, ///< affine-invariant Riemannian metric
    lem,  ///< log-Euclidean metric
    jbld, ///< Jensen-Bregman LogDet divergence (square root)
    skld, ///< symmetrized Kullback-Leibler divergence (square root)
};

std::string to_string(Measure m);
Measure measure_from_string(const std::string& name);

/// Squared measure d^2(x, y). Tiny negative results in (-1e-12, 0] are
/// clamped to zero; anything below that window throws NumericalError.
double dist_sq(Measure m, const HpdMatrix& x, const HpdMatrix& y);

/// d(x, y) = sqrt(dist_sq(x, y)).
double dist(Measure m, const HpdMatrix& x, const HpdMatrix& y);

/// Squared measures with caller-supplied cached transforms. These back the
/// median and filter hot loops, where logs / inverses / logdets of repeated
/// arguments are computed once and reused.
double airm_dist_sq(const HpdMatrix& x, const HpdMatrix& y);
double lem_dist_sq(const HermitianMatrix& log_x, const HermitianMatrix& log_y);
double jbld_dist_sq(const CMatrix& x, const CMatrix& y, double log_det_x, double log_det_y);
double skld_dist_sq(const CMatrix& x, const CMatrix& x_inv, const CMatrix& y,
                    const CMatrix& y_inv);

/// Shared clamp: d^2 in (-1e-12, 0] -> 0; below the window -> NumericalError.
double clamp_dist_sq(double d_sq);

} // namespace mig
