#pragma once

#include "mig/measures.hpp"

namespace mig {

/// Anisotropy of an HPD matrix: the squared measure from R to the nearest
/// isotropic matrix epsilon* I.
struct AnisotropyReport {
    Measure measure;
    double epsilon_star; ///< argmin_eps d^2(R, eps I)
    double index;        ///< a(R) = d^2(R, epsilon_star I), >= 0
};

/// Unique positive root of g(eps) = 2 sum_i 1/(lambda_i + eps) - n/eps,
/// located by bisection on [min lambda, max lambda] (the bracket is expanded
/// if roundoff pushes the sign change outside). |g(root)| <= 1e-12 * n/root.
double jbld_epsilon_star(const RVector& eigenvalues);

/// Anisotropy index for LEM, JBLD, or SKLD. All three formulas depend only
/// on the spectrum, which is computed once. AIRM is rejected.
AnisotropyReport anisotropy(Measure measure, const HpdMatrix& r);

/// Discrimination ratio AD = ai_signal / ai_ccm.
/// Throws DegenerateIsotropyError when ai_ccm is zero.
double ad_ratio(double ai_signal, double ai_ccm);

} // namespace mig
