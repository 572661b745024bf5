#pragma once

#include <random>
#include <vector>

#include "mig/hpd.hpp"

namespace mig {

enum class TextureModel {
    gaussian,
    compound_gaussian, ///< Gaussian speckle scaled by a unit-mean Gamma texture
};

/// Clutter-plus-noise model: Sigma = sigma_n2 * I + sigma_c2 * Sigma_c with
/// Sigma_c(j,k) = rho^|j-k| e^{i 2 pi f_c (j-k)} and sigma_c2 from the CNR.
struct ClutterScenario {
    int n = 8;
    double rho = 0.95;
    double f_c = 0.1;
    double sigma_n2 = 1.0;
    double cnr_db = 20.0;
    TextureModel texture = TextureModel::gaussian;
    double nu = 1.0; ///< Gamma shape when texture is compound_gaussian

    void validate() const;
};

enum class Placement {
    uniform_random, ///< cells chosen without replacement from the secondary set
    fixed,          ///< caller-specified indices
};

/// Interference injections into secondary cells: `count` cells receive an
/// added scaled steering vector at Doppler f_d and per-interference SCNR.
struct InterferenceSpec {
    int count = 0;
    double f_d = 0.2;
    double scnr_db = 15.0;
    Placement placement = Placement::uniform_random;
    std::vector<int> fixed_indices; ///< consulted when placement == fixed

    void validate() const;
};

/// Target injected into the cell under test.
struct TargetSpec {
    double f_d = 0.0;
    double scnr_db = 0.0;
};

/// Sigma = sigma_n2 I + sigma_c2 Sigma_c; Hermitian Toeplitz PD.
HpdMatrix clutter_covariance(const ClutterScenario& scenario);

/// p_k = e^{i 2 pi f_d k}, k = 0..n-1, unnormalized (|p_k| = 1).
CVector steering_vector(int n, double f_d);

/// Amplitude alpha with |alpha|^2 p^H Sigma^{-1} p = 10^{scnr_db/10}
/// (real, phase 0).
double target_amplitude(const HpdMatrix& sigma, const CVector& p, double scnr_db);

/// c + alpha p with alpha from target_amplitude.
SampleVector inject_target(const SampleVector& c, const TargetSpec& target,
                           const HpdMatrix& sigma);

/// Caches Sigma and its spectral square root for repeated draws.
class ScenarioSampler {
public:
    explicit ScenarioSampler(const ClutterScenario& scenario);

    const ClutterScenario& scenario() const noexcept { return scenario_; }
    const HpdMatrix& covariance() const noexcept { return sigma_; }

    /// One clutter draw c = sqrt(tau) Sigma^{1/2} z, z standard circular
    /// complex normal; tau = 1 for Gaussian texture. Draw order per call:
    /// texture first (if any), then z components (re, im interleaved).
    SampleVector draw_cell(std::mt19937_64& rng) const;

    /// Injection amplitude against this scenario's Sigma.
    double amplitude(double f_d, double scnr_db) const;

private:
    ClutterScenario scenario_;
    HpdMatrix sigma_;
    CMatrix sqrt_sigma_;
};

/// Convenience single-shot form of ScenarioSampler::draw_cell.
SampleVector draw_cell(const ClutterScenario& scenario, std::mt19937_64& rng);

} // namespace mig
