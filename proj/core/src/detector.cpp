#include "mig/detector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mig/parallel.hpp"
#include "mig/rng.hpp"

namespace mig {

void DetectorConfig::validate() const {
    median_cfg.validate();
    if (filter) {
        filter->validate();
        if (filter->measure != measure)
            throw UsageError("DetectorConfig: filter measure must match the detector measure");
    }
    if (guard_cells < 0)
        throw UsageError("DetectorConfig: guard_cells must be nonnegative");
    if (!(p_fa > 0.0 && p_fa < 1.0))
        throw UsageError("DetectorConfig: p_fa must lie in (0, 1)");
}

void CellMap::validate() const {
    if (cells.size() < 2)
        throw UsageError("CellMap: need at least two cells");
    if (cut_index < 0 || cut_index >= static_cast<int>(cells.size()))
        throw UsageError("CellMap: cut_index out of range");
    const Eigen::Index n = cells.front().size();
    for (const SampleVector& x : cells)
        if (x.size() != n)
            throw UsageError("CellMap: cells have mixed dimensions");
}

std::vector<int> secondary_indices(int cell_count, int cut_index, int guard_cells) {
    std::vector<int> out;
    out.reserve(cell_count);
    for (int i = 0; i < cell_count; ++i)
        if (std::abs(i - cut_index) > guard_cells)
            out.push_back(i);
    if (out.empty())
        throw UsageError("secondary_indices: guard band excludes every secondary cell");
    return out;
}

double mig_statistic(const CellMap& cellmap, const DetectorConfig& config) {
    cellmap.validate();
    config.validate();

    std::vector<HpdMatrix> mats;
    mats.reserve(cellmap.cells.size());
    for (const SampleVector& x : cellmap.cells)
        mats.push_back(toeplitz_estimate(x));
    if (config.filter)
        mats = manifold_filter(mats, *config.filter);

    const std::vector<int> secondary =
        secondary_indices(static_cast<int>(mats.size()), cellmap.cut_index, config.guard_cells);
    std::vector<HpdMatrix> reference;
    reference.reserve(secondary.size());
    for (int i : secondary)
        reference.push_back(mats[i]);

    const MedianResult med = geometric_median(config.measure, reference, config.median_cfg);
    return dist(config.measure, mats[cellmap.cut_index], med.estimate);
}

double amf_statistic(const SampleVector& x, const CVector& p, const HpdMatrix& r_hat) {
    if (x.size() != r_hat.dim() || p.size() != r_hat.dim())
        throw UsageError("amf_statistic: dimension mismatch");
    Eigen::LLT<CMatrix> llt(r_hat.m());
    if (llt.info() != Eigen::Success)
        throw NumericalError("amf_statistic: Cholesky of R_hat failed");
    const Complex num = p.dot(llt.solve(x));   // p^H R^{-1} x
    const double den = p.dot(llt.solve(p)).real();
    return std::norm(num) / den;
}

double threshold_from_statistics(std::vector<double> statistics, double p_fa) {
    if (statistics.empty())
        throw UsageError("threshold_from_statistics: empty statistic list");
    if (!(p_fa > 0.0 && p_fa < 1.0))
        throw UsageError("threshold_from_statistics: p_fa must lie in (0, 1)");
    // ceil with a guard against p_fa * trials landing a hair above an integer.
    const double scaled = p_fa * static_cast<double>(statistics.size());
    auto rank = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, statistics.size());
    std::nth_element(statistics.begin(), statistics.begin() + (rank - 1), statistics.end(),
                     std::greater<>());
    return statistics[rank - 1];
}

double calibrate_threshold(const StatisticFn& detector, const CellMapGenerator& h0_generator,
                           double p_fa, std::int64_t trials, std::uint64_t seed, int threads) {
    if (!(p_fa > 0.0 && p_fa < 1.0))
        throw UsageError("calibrate_threshold: p_fa must lie in (0, 1)");
    if (static_cast<double>(trials) < 10.0 / p_fa) {
        std::ostringstream msg;
        msg << "calibrate_threshold: " << trials << " trials < 10/p_fa = " << 10.0 / p_fa;
        throw UsageError(msg.str());
    }
    std::vector<double> stats(static_cast<std::size_t>(trials));
    parallel_for(stats.size(), threads, [&](std::size_t t) {
        std::mt19937_64 rng = make_stream(seed, static_cast<std::uint64_t>(t));
        const CellMap map = h0_generator(rng);
        stats[t] = detector(map);
    });
    return threshold_from_statistics(std::move(stats), p_fa);
}

bool detect(double statistic, double gamma) {
    return statistic > gamma;
}

} // namespace mig
