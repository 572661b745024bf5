#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mig/anisotropy.hpp"
#include "mig/detector.hpp"
#include "mig/scenario.hpp"

namespace mig {

/// Stable stream tags separating the random phases of each experiment.
namespace phase {
inline constexpr std::uint64_t offset_error = 1;
inline constexpr std::uint64_t sample_count = 2;
inline constexpr std::uint64_t statistic_profile = 3;
inline constexpr std::uint64_t ad = 4;
inline constexpr std::uint64_t pd_calibration = 5;
inline constexpr std::uint64_t pd_h1 = 6;
inline constexpr std::uint64_t fa_check = 7;
} // namespace phase

/// (m, h) pair for filter sweeps; the measure slot of FilterParams is filled
/// in per detector/measure when the experiment runs.
struct FilterGridEntry {
    int m = 11;
    double h = 1.5;
};

// ------------------------------------------------------------------------
// Robustness vs interference count: L_error = |R0 - R_interf| / |R0|.
// ------------------------------------------------------------------------

struct OffsetErrorParams {
    ClutterScenario scenario{};
    int k = 40; ///< samples per trial
    std::vector<int> interference_counts{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
    double interference_f_d = 0.2;
    double interference_scnr_db = 15.0;
    MedianSolverConfig median_cfg{};
    std::int64_t trials = 50;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct OffsetErrorRow {
    int interference_count;
    std::string estimator; ///< scm | lem | jbld | skld
    double l_error;        ///< mean over trials
    double std_error;
    std::int64_t trials;
};

struct OffsetErrorResult {
    std::vector<OffsetErrorRow> rows;
};

void run_offset_error(const OffsetErrorParams& params, OffsetErrorResult& out);

// ------------------------------------------------------------------------
// Estimation error vs sample count: T_error = |R_hat - Sigma| / |Sigma|.
// ------------------------------------------------------------------------

struct SampleCountParams {
    ClutterScenario scenario{};
    std::vector<int> k_values{8, 10, 12, 16, 20, 24, 28, 32, 36, 40};
    MedianSolverConfig median_cfg{};
    std::int64_t trials = 50;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct SampleCountRow {
    int k;
    std::string estimator;
    double t_error;
    double std_error;
    std::int64_t trials;
};

struct SampleCountResult {
    std::vector<SampleCountRow> rows;
};

void run_sample_count(const SampleCountParams& params, SampleCountResult& out);

// ------------------------------------------------------------------------
// Per-cell detection-statistic profiles, max-normalized per trace.
// ------------------------------------------------------------------------

struct ProfileParams {
    ClutterScenario scenario{};
    int num_cells = 40;
    int target_cell = 20;
    TargetSpec target{0.2, 15.0};
    std::vector<Measure> measures{Measure::lem, Measure::jbld, Measure::skld};
    std::vector<FilterGridEntry> filter_grid{{11, 1.5}, {11, 2.0}, {13, 1.5}};
    MedianSolverConfig median_cfg{};
    int guard_cells = 0;
    std::int64_t trials = 1;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct ProfileRow {
    int cell;
    std::string measure;
    bool filtered;
    int m;    ///< 0 on unfiltered rows
    double h; ///< 0 on unfiltered rows
    double statistic; ///< mean of per-trace max-normalized statistics
    double std_error;
    std::int64_t trials;
};

struct ProfileResult {
    std::vector<ProfileRow> rows;
};

void run_statistic_profile(const ProfileParams& params, ProfileResult& out);

// ------------------------------------------------------------------------
// Anisotropy discrimination: AD = AI(CUT under H1) / AI_CCM, where AI_CCM
// is the mean anisotropy of the secondary cells. Under H0 the ratio
// concentrates near 1; a target raises it, and filtering raises it further
// by denoising the clutter cells more than the (outlier-protected) CUT.
// ------------------------------------------------------------------------

/// One measure plus the filter bandwidth used for its "filtered" condition.
/// Bandwidths are scaled to each measure: squared distances between
/// neighbouring clutter cells differ by an order of magnitude across
/// measures, so a single h cannot serve all three.
struct AdMeasureSpec {
    Measure measure = Measure::lem;
    FilterGridEntry filter{11, 1.5};
};

/// lem (11, 1.5), jbld (11, 0.5), skld (11, 1.5).
std::vector<AdMeasureSpec> default_ad_measures();

struct AdParams {
    ClutterScenario scenario{};
    int num_cells = 40;
    int target_cell = 20;
    TargetSpec target{0.2, 15.0};
    std::vector<AdMeasureSpec> measures = default_ad_measures();
    int guard_cells = 0;
    std::int64_t trials = 100;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct AdRow {
    std::string measure;
    bool filtered;
    int m;    ///< 0 on unfiltered rows
    double h; ///< 0 on unfiltered rows
    double ad; ///< mean of per-trial AD ratios
    double std_error;
    std::int64_t trials;
};

struct AdResult {
    std::vector<AdRow> rows;
};

void run_ad(const AdParams& params, AdResult& out);

// ------------------------------------------------------------------------
// Detection probability curves and CFAR calibration.
// ------------------------------------------------------------------------

/// One detector variant in a detection experiment. An empty id defaults to
/// "<measure>" or "<measure>_filtered".
struct PdDetectorSpec {
    std::string id;
    Measure measure = Measure::lem;
    std::optional<FilterGridEntry> filter;
    MedianSolverConfig median_cfg{};
    int guard_cells = 0;
};

/// Default detection-filter bandwidth, scaled to each measure's squared
/// distances: lem (11, 4.5), jbld (11, 1.5), skld (11, 6.0). Detection
/// favours heavier smoothing than the AD analysis: the calibrated threshold
/// collapses with the H0 spread faster than the target statistic erodes.
FilterGridEntry default_detection_filter(Measure measure);

/// Default bank: per measure one unfiltered and one filtered variant, the
/// latter using default_detection_filter.
std::vector<PdDetectorSpec> default_detector_bank(const std::vector<Measure>& measures);

struct PdCurveParams {
    ClutterScenario scenario{};
    std::vector<PdDetectorSpec> detectors =
        default_detector_bank({Measure::lem, Measure::jbld, Measure::skld});
    bool include_amf = true;
    std::vector<double> scnr_grid_db{0, 3, 6, 9, 12, 15, 18, 21, 24};
    int k = 8;
    int cut_index = -1; ///< -1 = middle cell of the k+1
    TargetSpec target{0.2, 0.0}; ///< scnr_db supplied by the grid
    InterferenceSpec interference{2, 0.2, 10.0, Placement::uniform_random, {}};
    double p_fa = 1e-2;
    std::int64_t calibration_trials = 0; ///< 0 = ceil(100 / p_fa)
    std::int64_t trials = 2000;          ///< H1 trials per grid point
    std::uint64_t seed = 0;
    int threads = 1;
};

struct PdPoint {
    double scnr_db;
    std::string detector_id;
    std::string measure; ///< "amf" for the baseline
    bool filtered;
    double p_d;
    double std_error; ///< binomial
    std::int64_t trials;
};

struct PdCurveResult {
    std::vector<std::string> detector_ids;
    std::vector<double> thresholds; ///< parallel to detector_ids
    std::vector<PdPoint> rows;
};

void run_pd_curve(const PdCurveParams& params, PdCurveResult& out);

struct CalibrateParams {
    ClutterScenario scenario{};
    std::vector<PdDetectorSpec> detectors =
        default_detector_bank({Measure::lem, Measure::jbld, Measure::skld});
    bool include_amf = true;
    int k = 8;
    int cut_index = -1;
    TargetSpec target{0.2, 0.0}; ///< Doppler steers the AMF; no target injected
    InterferenceSpec interference{2, 0.2, 10.0, Placement::uniform_random, {}};
    double p_fa = 1e-2;
    std::int64_t calibration_trials = 0; ///< 0 = ceil(100 / p_fa)
    std::int64_t fa_trials = 10000;      ///< fresh H0 trials for the empirical rate
    std::uint64_t seed = 0;
    int threads = 1;
};

struct CalibrateRow {
    std::string detector_id;
    std::string measure;
    bool filtered;
    double p_fa;
    std::int64_t calibration_trials;
    double gamma;
    std::int64_t fa_trials;
    double fa_rate;
};

struct CalibrateResult {
    std::vector<CalibrateRow> rows;
};

void run_calibrate(const CalibrateParams& params, CalibrateResult& out);

// ------------------------------------------------------------------------
// Shared cell-map construction for the detection experiments.
// ------------------------------------------------------------------------

/// Builds k-secondary-plus-CUT cell maps: clutter everywhere, interferences
/// injected into secondary cells, and (H1) the target into the CUT.
class CellMapBuilder {
public:
    CellMapBuilder(const ClutterScenario& scenario, int k, int cut_index,
                   const InterferenceSpec& interference, const TargetSpec& target);

    int cut_index() const noexcept { return cut_; }
    const ScenarioSampler& sampler() const noexcept { return sampler_; }

    CellMap h0(std::mt19937_64& rng) const;
    /// Target injected at scnr_db (overrides the TargetSpec power).
    CellMap h1(std::mt19937_64& rng, double scnr_db) const;

private:
    CellMap build(std::mt19937_64& rng, const double* target_scnr_db) const;

    ScenarioSampler sampler_;
    int k_;
    int cut_;
    InterferenceSpec interference_;
    TargetSpec target_;
    CVector interference_wave_; ///< alpha_I * p(f_d_I), precomputed
    CVector target_dir_;        ///< p(f_d_target), unit-modulus entries
    std::vector<int> secondary_; ///< candidate interference cells
};

} // namespace mig
