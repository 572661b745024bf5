#pragma once

#include <vector>

#include "mig/measures.hpp"

namespace mig {

/// Manifold filter parameters: window size m (odd, self-inclusive, truncated
/// at the array edges), bandwidth h, and the measure used in the weights.
struct FilterParams {
    int m = 11;
    double h = 1.5;
    Measure measure = Measure::lem;

    void validate() const;
};

/// Exponential weights w_i = exp(-d^2(R_i, R)/h^2) / sum_j exp(-d^2(R_j, R)/h^2)
/// of the neighbors against the window's center. Computed with a max-shift so
/// large distances underflow to relative zero instead of poisoning the sum.
std::vector<double> filter_weights(const HpdMatrix& center, const std::vector<HpdMatrix>& neighbors,
                                   double h, Measure measure);

/// Filters every cell: output[c] is the exponentially weighted arithmetic
/// mean of the m cells centered on c (including c itself).
std::vector<HpdMatrix> manifold_filter(const std::vector<HpdMatrix>& cells,
                                       const FilterParams& params);

} // namespace mig
