#include "mig/filter.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "mig/median.hpp"

namespace mig {

void FilterParams::validate() const {
    if (m < 1 || m % 2 == 0)
        throw UsageError("FilterParams: window size m must be an odd positive integer");
    if (!(h > 0.0))
        throw UsageError("FilterParams: bandwidth h must be positive");
}

namespace {

std::vector<double> softmax_weights(const std::vector<double>& d_sq, double h) {
    const double shift = *std::min_element(d_sq.begin(), d_sq.end());
    std::vector<double> w(d_sq.size());
    double total = 0.0;
    for (std::size_t i = 0; i < d_sq.size(); ++i) {
        w[i] = std::exp(-(d_sq[i] - shift) / (h * h));
        total += w[i];
    }
    for (double& wi : w)
        wi /= total;
    return w;
}

/// Per-cell transforms computed once so windowed pairwise distances reuse
/// them across overlapping windows.
class PairwiseDistSq {
public:
    PairwiseDistSq(const std::vector<HpdMatrix>& cells, Measure measure)
        : cells_(cells), measure_(measure) {
        switch (measure_) {
        case Measure::lem:
            logs_.reserve(cells.size());
            for (const HpdMatrix& r : cells)
                logs_.push_back(log_m(r));
            break;
        case Measure::jbld:
            log_dets_.reserve(cells.size());
            for (const HpdMatrix& r : cells)
                log_dets_.push_back(log_det(r.m()));
            break;
        case Measure::skld:
            invs_.reserve(cells.size());
            for (const HpdMatrix& r : cells)
                invs_.push_back(inv_m(r).m());
            break;
        case Measure::airm:
            break;
        }
    }

    double operator()(std::size_t i, std::size_t j) const {
        if (i == j)
            return 0.0;
        switch (measure_) {
        case Measure::airm:
            return airm_dist_sq(cells_[i], cells_[j]);
        case Measure::lem:
            return lem_dist_sq(logs_[i], logs_[j]);
        case Measure::jbld:
            return jbld_dist_sq(cells_[i].m(), cells_[j].m(), log_dets_[i], log_dets_[j]);
        case Measure::skld:
            return skld_dist_sq(cells_[i].m(), invs_[i], cells_[j].m(), invs_[j]);
        }
        throw UsageError("PairwiseDistSq: unknown measure");
    }

private:
    const std::vector<HpdMatrix>& cells_;
    Measure measure_;
    std::vector<HermitianMatrix> logs_;
    std::vector<double> log_dets_;
    std::vector<CMatrix> invs_;
};

} // namespace

std::vector<double> filter_weights(const HpdMatrix& center, const std::vector<HpdMatrix>& neighbors,
                                   double h, Measure measure) {
    if (!(h > 0.0))
        throw UsageError("filter_weights: bandwidth h must be positive");
    if (neighbors.empty())
        throw UsageError("filter_weights: empty neighbor list");
    std::vector<double> d_sq(neighbors.size());
    for (std::size_t i = 0; i < neighbors.size(); ++i)
        d_sq[i] = dist_sq(measure, neighbors[i], center);
    return softmax_weights(d_sq, h);
}

std::vector<HpdMatrix> manifold_filter(const std::vector<HpdMatrix>& cells,
                                       const FilterParams& params) {
    params.validate();
    if (cells.empty())
        throw UsageError("manifold_filter: empty cell list");
    if (params.m == 1)
        return cells;

    const PairwiseDistSq d_sq(cells, params.measure);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cells.size());
    const std::ptrdiff_t half = (params.m - 1) / 2;

    std::vector<HpdMatrix> out;
    out.reserve(cells.size());
    for (std::ptrdiff_t c = 0; c < n; ++c) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, c - half);
        const std::ptrdiff_t hi = std::min(n - 1, c + half);
        std::vector<HpdMatrix> window;
        std::vector<double> window_d_sq;
        window.reserve(hi - lo + 1);
        window_d_sq.reserve(hi - lo + 1);
        for (std::ptrdiff_t i = lo; i <= hi; ++i) {
            window.push_back(cells[i]);
            window_d_sq.push_back(d_sq(i, c));
        }
        out.push_back(
            weighted_arithmetic_mean(window, softmax_weights(window_d_sq, params.h)));
    }
    return out;
}

} // namespace mig
