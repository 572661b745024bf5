#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "mig/filter.hpp"
#include "mig/median.hpp"

namespace mig {

/// One detector variant: a measure, an optional manifold filter stage, the
/// median solver settings, and the nominal false-alarm rate.
struct DetectorConfig {
    Measure measure = Measure::lem;
    std::optional<FilterParams> filter; ///< absent = unfiltered variant
    MedianSolverConfig median_cfg{};
    int guard_cells = 0;
    double p_fa = 1e-3;

    /// Also forces filter->measure == measure: the pipeline uses one
    /// measure end to end.
    void validate() const;
};

/// Ordered range cells plus the index of the cell under test.
struct CellMap {
    std::vector<SampleVector> cells;
    int cut_index = 0;

    void validate() const;
};

/// Secondary-cell indices for a CUT: everything outside the guard band
/// |i - cut| <= guard_cells. Throws UsageError when empty.
std::vector<int> secondary_indices(int cell_count, int cut_index, int guard_cells);

/// The detection statistic d(R_CUT, R_hat): Toeplitz-estimate every cell,
/// optionally manifold-filter all of them, take the geometric median of the
/// secondary cells, and measure the distance to the (filtered) CUT matrix.
double mig_statistic(const CellMap& cellmap, const DetectorConfig& config);

/// Adaptive matched filter statistic |p^H R^{-1} x|^2 / (p^H R^{-1} p).
double amf_statistic(const SampleVector& x, const CVector& p, const HpdMatrix& r_hat);

/// The ceil(p_fa * count)-th largest of the given statistics.
double threshold_from_statistics(std::vector<double> statistics, double p_fa);

using StatisticFn = std::function<double(const CellMap&)>;
using CellMapGenerator = std::function<CellMap(std::mt19937_64&)>;

/// Monte Carlo CFAR threshold: draws `trials` H0 cell maps from the
/// generator (per-trial streams derived from seed, so the result does not
/// depend on `threads`), evaluates the statistic, and returns the
/// ceil(p_fa * trials)-th largest value. Requires trials >= 10 / p_fa.
double calibrate_threshold(const StatisticFn& detector, const CellMapGenerator& h0_generator,
                           double p_fa, std::int64_t trials, std::uint64_t seed, int threads = 1);

/// Decision rule: target declared iff statistic exceeds gamma strictly.
bool detect(double statistic, double gamma);

} // namespace mig
