#include "mig/scenario.hpp"

#include <cmath>
#include <numbers>

namespace mig {

void ClutterScenario::validate() const {
    if (n < 1)
        throw UsageError("ClutterScenario: dimension n must be positive");
    if (!(rho > 0.0 && rho < 1.0))
        throw UsageError("ClutterScenario: rho must lie in (0, 1)");
    if (!std::isfinite(f_c))
        throw UsageError("ClutterScenario: f_c must be finite");
    if (!(sigma_n2 > 0.0))
        throw UsageError("ClutterScenario: sigma_n2 must be positive");
    if (!std::isfinite(cnr_db))
        throw UsageError("ClutterScenario: cnr_db must be finite");
    if (texture == TextureModel::compound_gaussian && !(nu > 0.0))
        throw UsageError("ClutterScenario: texture shape nu must be positive");
}

void InterferenceSpec::validate() const {
    if (count < 0)
        throw UsageError("InterferenceSpec: count must be nonnegative");
    if (!std::isfinite(f_d) || !std::isfinite(scnr_db))
        throw UsageError("InterferenceSpec: f_d and scnr_db must be finite");
    if (placement == Placement::fixed && static_cast<int>(fixed_indices.size()) < count)
        throw UsageError("InterferenceSpec: fixed placement needs at least `count` indices");
}

HpdMatrix clutter_covariance(const ClutterScenario& scenario) {
    scenario.validate();
    const int n = scenario.n;
    const double sigma_c2 = scenario.sigma_n2 * std::pow(10.0, scenario.cnr_db / 10.0);
    CMatrix sigma(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const int lag = j - k;
            const double mag = std::pow(scenario.rho, std::abs(lag));
            const double phase = 2.0 * std::numbers::pi * scenario.f_c * static_cast<double>(lag);
            sigma(j, k) = sigma_c2 * mag * std::polar(1.0, phase);
        }
        sigma(j, j) += scenario.sigma_n2;
    }
    return HpdMatrix(sigma);
}

CVector steering_vector(int n, double f_d) {
    if (n < 1)
        throw UsageError("steering_vector: n must be positive");
    CVector p(n);
    for (int k = 0; k < n; ++k)
        p(k) = std::polar(1.0, 2.0 * std::numbers::pi * f_d * static_cast<double>(k));
    return p;
}

double target_amplitude(const HpdMatrix& sigma, const CVector& p, double scnr_db) {
    if (p.size() != sigma.dim())
        throw UsageError("target_amplitude: steering vector / covariance dimension mismatch");
    Eigen::LLT<CMatrix> llt(sigma.m());
    if (llt.info() != Eigen::Success)
        throw NumericalError("target_amplitude: Cholesky of Sigma failed");
    const double quad = p.dot(llt.solve(p)).real(); // p^H Sigma^{-1} p > 0
    return std::sqrt(std::pow(10.0, scnr_db / 10.0) / quad);
}

SampleVector inject_target(const SampleVector& c, const TargetSpec& target,
                           const HpdMatrix& sigma) {
    if (c.size() != sigma.dim())
        throw UsageError("inject_target: sample / covariance dimension mismatch");
    const CVector p = steering_vector(static_cast<int>(c.size()), target.f_d);
    const double alpha = target_amplitude(sigma, p, target.scnr_db);
    return c + alpha * p;
}

ScenarioSampler::ScenarioSampler(const ClutterScenario& scenario)
    : scenario_(scenario), sigma_(clutter_covariance(scenario)),
      sqrt_sigma_(sqrt_m(sigma_).m()) {}

SampleVector ScenarioSampler::draw_cell(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double scale = 1.0;
    if (scenario_.texture == TextureModel::compound_gaussian) {
        std::gamma_distribution<double> texture(scenario_.nu, 1.0 / scenario_.nu);
        scale = std::sqrt(texture(rng));
    }
    const int n = scenario_.n;
    CVector z(n);
    constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    for (int i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z(i) = Complex(re * inv_sqrt2, im * inv_sqrt2); // E|z_i|^2 = 1
    }
    return scale * (sqrt_sigma_ * z);
}

double ScenarioSampler::amplitude(double f_d, double scnr_db) const {
    return target_amplitude(sigma_, steering_vector(scenario_.n, f_d), scnr_db);
}

SampleVector draw_cell(const ClutterScenario& scenario, std::mt19937_64& rng) {
    return ScenarioSampler(scenario).draw_cell(rng);
}

} // namespace mig
