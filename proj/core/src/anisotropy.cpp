#include "mig/anisotropy.hpp"

#include <cmath>

namespace mig {

double jbld_epsilon_star(const RVector& eigenvalues) {
    const Eigen::Index n = eigenvalues.size();
    if (n == 0)
        throw UsageError("jbld_epsilon_star: empty spectrum");
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(eigenvalues(i) > 0.0))
            throw UsageError("jbld_epsilon_star: eigenvalues must be positive");

    const auto g = [&](double eps) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            acc += 1.0 / (eigenvalues(i) + eps);
        return 2.0 * acc - static_cast<double>(n) / eps;
    };

    // g(min lambda) <= 0 <= g(max lambda) by the AM bounds 1/(l+min) <= 1/(2 min),
    // 1/(l+max) >= 1/(2 max); equality only for an isotropic spectrum.
    double lo = eigenvalues.minCoeff();
    double hi = eigenvalues.maxCoeff();
    if (lo == hi)
        return lo;
    while (g(lo) > 0.0)
        lo *= 0.5;
    while (g(hi) < 0.0)
        hi *= 2.0;
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

AnisotropyReport anisotropy(Measure measure, const HpdMatrix& r) {
    const SpectralDecomposition eig = herm_eig(r);
    const RVector& lambda = eig.eigenvalues;
    const Eigen::Index n = lambda.size();

    switch (measure) {
    case Measure::lem: {
        double mean_log = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            mean_log += std::log(lambda(i));
        mean_log /= static_cast<double>(n);
        double a = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double t = std::log(lambda(i)) - mean_log;
            a += t * t;
        }
        return {measure, std::exp(mean_log), clamp_dist_sq(a)};
    }
    case Measure::jbld: {
        const double eps = jbld_epsilon_star(lambda);
        double a = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            a += std::log(0.5 * (lambda(i) + eps)) - 0.5 * (std::log(lambda(i)) + std::log(eps));
        return {measure, eps, clamp_dist_sq(a)};
    }
    case Measure::skld: {
        double tr = 0.0;
        double tr_inv = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            tr += lambda(i);
            tr_inv += 1.0 / lambda(i);
        }
        const double eps = std::sqrt(tr / tr_inv);
        const double a = eps * tr_inv + tr / eps - 2.0 * static_cast<double>(n);
        return {measure, eps, clamp_dist_sq(a)};
    }
    case Measure::airm:
        throw UsageError("anisotropy: AIRM anisotropy is not available");
    }
    throw UsageError("anisotropy: unknown measure");
}

double ad_ratio(double ai_signal, double ai_ccm) {
    if (ai_signal < 0.0 || ai_ccm < 0.0)
        throw UsageError("ad_ratio: anisotropy indices must be nonnegative");
    if (ai_ccm == 0.0)
        throw DegenerateIsotropyError("ad_ratio: reference anisotropy index is zero");
    return ai_signal / ai_ccm;
}

} // namespace mig
