#pragma once

#include <vector>

#include "mig/measures.hpp"

namespace mig {

struct MedianSolverConfig {
    double tol = 1e-8;              ///< relative Frobenius step tolerance
    int max_iter = 200;             ///< iteration budget
    double weiszfeld_floor = 1e-12; ///< distance floor in the reweighting

    void validate() const;
};

struct MedianResult {
    HpdMatrix estimate;
    int iterations = 0;
    double final_step = 0.0; ///< last relative step ||R_{t+1}-R_t|| / ||R_t||
    double objective = 0.0;  ///< F(estimate) = sum_k d(estimate, R_k)
    bool converged = false;
    /// K = 2 inputs: the sum-of-distances minimizer is non-unique along the
    /// connecting geodesic; the fixed point is still returned.
    bool nonunique_warning = false;
};

/// Sample covariance matrix (1/K) sum_k x_k x_k^H over the secondary data,
/// diagonally loaded when K < n leaves it singular.
HpdMatrix scm(const std::vector<SampleVector>& samples);

/// Convex combination sum_i w_i R_i. Weights must be nonnegative and sum to
/// one within 1e-12.
HpdMatrix weighted_arithmetic_mean(const std::vector<HpdMatrix>& matrices,
                                   const std::vector<double>& weights);

/// Unweighted arithmetic mean, used to initialize the median iterations.
HpdMatrix arithmetic_mean(const std::vector<HpdMatrix>& matrices);

/// Sum-of-distances objective F(r) = sum_k dist(measure, r, matrices[k]).
double median_objective(Measure measure, const HpdMatrix& r,
                        const std::vector<HpdMatrix>& matrices);

/// Weiszfeld-type fixed-point geometric median under LEM, JBLD, or SKLD,
/// initialized at the arithmetic mean. AIRM has no fixed-point iteration
/// here and is rejected with UsageError. Hitting max_iter flags the result
/// unconverged rather than throwing.
MedianResult geometric_median(Measure measure, const std::vector<HpdMatrix>& matrices,
                              const MedianSolverConfig& cfg = {});

} // namespace mig
