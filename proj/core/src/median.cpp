#include "mig/median.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

namespace mig {

void MedianSolverConfig::validate() const {
    if (!(tol > 0.0))
        throw UsageError("MedianSolverConfig: tol must be positive");
    if (max_iter < 1)
        throw UsageError("MedianSolverConfig: max_iter must be at least 1");
    if (!(weiszfeld_floor > 0.0))
        throw UsageError("MedianSolverConfig: weiszfeld_floor must be positive");
}

HpdMatrix scm(const std::vector<SampleVector>& samples) {
    if (samples.empty())
        throw UsageError("scm: empty sample list");
    const Eigen::Index n = samples.front().size();
    if (n == 0)
        throw UsageError("scm: empty sample vector");
    CMatrix acc = CMatrix::Zero(n, n);
    for (const SampleVector& x : samples) {
        if (x.size() != n)
            throw UsageError("scm: samples have mixed dimensions");
        acc.noalias() += x * x.adjoint();
    }
    acc /= static_cast<double>(samples.size());
    return diagonally_loaded(HermitianMatrix(acc));
}

namespace {

void check_same_dims(const std::vector<HpdMatrix>& matrices, const char* who) {
    if (matrices.empty())
        throw UsageError(std::string(who) + ": empty matrix list");
    const Eigen::Index n = matrices.front().dim();
    for (const HpdMatrix& r : matrices)
        if (r.dim() != n)
            throw UsageError(std::string(who) + ": matrices have mixed dimensions");
}

double log_det_from_llt(const Eigen::LLT<CMatrix>& llt) {
    double acc = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i)
        acc += std::log(l(i, i).real());
    return 2.0 * acc;
}

/// Shared fixed-point loop; `step` maps R_t to R_{t+1} and may keep caches.
MedianResult run_fixed_point(Measure measure, const std::vector<HpdMatrix>& matrices,
                             const MedianSolverConfig& cfg,
                             const std::function<HpdMatrix(const HpdMatrix&)>& step) {
    MedianResult out{arithmetic_mean(matrices)};
    while (out.iterations < cfg.max_iter) {
        HpdMatrix next = step(out.estimate);
        out.final_step = (next.m() - out.estimate.m()).norm() / out.estimate.m().norm();
        out.estimate = std::move(next);
        ++out.iterations;
        if (out.final_step <= cfg.tol) {
            out.converged = true;
            break;
        }
    }
    out.objective = median_objective(measure, out.estimate, matrices);
    out.nonunique_warning = matrices.size() == 2;
    return out;
}

MedianResult solve_lem(const std::vector<HpdMatrix>& matrices, const MedianSolverConfig& cfg) {
    std::vector<CMatrix> logs;
    logs.reserve(matrices.size());
    for (const HpdMatrix& r : matrices)
        logs.push_back(log_m(r).m());

    // Log R_t is carried across iterations: the step's output is exp(M), so
    // M itself is its log and no extra eigendecomposition is needed.
    CMatrix current_log;
    bool have_log = false;
    auto step = [&](const HpdMatrix& r) {
        if (!have_log) {
            current_log = log_m(r).m();
            have_log = true;
        }
        const Eigen::Index n = r.dim();
        CMatrix num = CMatrix::Zero(n, n);
        double den = 0.0;
        for (const CMatrix& lk : logs) {
            const double delta = std::max((current_log - lk).norm(), cfg.weiszfeld_floor);
            num += lk / delta;
            den += 1.0 / delta;
        }
        current_log = num / den;
        return exp_m(HermitianMatrix(current_log));
    };
    return run_fixed_point(Measure::lem, matrices, cfg, step);
}

MedianResult solve_jbld(const std::vector<HpdMatrix>& matrices, const MedianSolverConfig& cfg) {
    const Eigen::Index n = matrices.front().dim();
    std::vector<double> input_log_dets;
    input_log_dets.reserve(matrices.size());
    for (const HpdMatrix& r : matrices)
        input_log_dets.push_back(log_det(r.m()));

    double current_log_det = 0.0;
    bool have_log_det = false;
    const CMatrix eye = CMatrix::Identity(n, n);
    const double n_log2 = static_cast<double>(n) * std::log(2.0);
    auto step = [&](const HpdMatrix& r) {
        if (!have_log_det) {
            current_log_det = log_det(r.m());
            have_log_det = true;
        }
        double wsum = 0.0;
        CMatrix msum = CMatrix::Zero(n, n);
        for (std::size_t k = 0; k < matrices.size(); ++k) {
            // One Cholesky of R_t + R_k yields both the midpoint logdet
            // (logdet((R_t+R_k)/2) = logdet(R_t+R_k) - n ln 2) and the
            // inverse summand of Prop 2.
            const CMatrix sum_k = r.m() + matrices[k].m();
            Eigen::LLT<CMatrix> llt(sum_k);
            if (llt.info() != Eigen::Success)
                throw NumericalError("jbld median: Cholesky of R_t + R_k failed");
            const double d_sq = clamp_dist_sq(log_det_from_llt(llt) - n_log2 -
                                              0.5 * (current_log_det + input_log_dets[k]));
            const double s_k = std::max(std::sqrt(d_sq), cfg.weiszfeld_floor);
            wsum += 1.0 / s_k;
            msum += llt.solve(eye) / s_k;
        }
        Eigen::LLT<CMatrix> llt_msum(msum);
        if (llt_msum.info() != Eigen::Success)
            throw NumericalError("jbld median: Cholesky of the weight sum failed");
        HermitianMatrix next((0.5 * wsum) * llt_msum.solve(eye));
        current_log_det = log_det(next.m());
        return HpdMatrix::trusted(next);
    };
    return run_fixed_point(Measure::jbld, matrices, cfg, step);
}

MedianResult solve_skld(const std::vector<HpdMatrix>& matrices, const MedianSolverConfig& cfg) {
    const Eigen::Index n = matrices.front().dim();
    std::vector<CMatrix> input_invs;
    input_invs.reserve(matrices.size());
    for (const HpdMatrix& r : matrices)
        input_invs.push_back(inv_m(r).m());

    auto step = [&](const HpdMatrix& r) {
        Eigen::LLT<CMatrix> llt_r(r.m());
        if (llt_r.info() != Eigen::Success)
            throw NumericalError("skld median: Cholesky of R_t failed");
        CMatrix p = CMatrix::Zero(n, n);
        CMatrix q = CMatrix::Zero(n, n);
        for (std::size_t k = 0; k < matrices.size(); ++k) {
            const double d_sq =
                clamp_dist_sq((input_invs[k] * r.m()).trace().real() +
                              llt_r.solve(matrices[k].m()).trace().real() -
                              2.0 * static_cast<double>(n));
            const double s_k = std::max(std::sqrt(d_sq), cfg.weiszfeld_floor);
            p += input_invs[k] / s_k;
            q += matrices[k].m() / s_k;
        }
        // Riccati-type update R = P^{-1/2} (P^{1/2} Q P^{1/2})^{1/2} P^{-1/2}.
        const SpectralDecomposition p_eig = herm_eig(HermitianMatrix(p));
        const CMatrix p_half = matrix_fn(p_eig, [](double x) { return std::sqrt(x); }).m();
        const CMatrix p_inv_half =
            matrix_fn(p_eig, [](double x) { return 1.0 / std::sqrt(x); }).m();
        const HermitianMatrix inner(p_half * q * p_half);
        const CMatrix inner_half =
            matrix_fn(herm_eig(inner), [](double x) { return std::sqrt(x); }).m();
        return HpdMatrix::trusted(HermitianMatrix(p_inv_half * inner_half * p_inv_half));
    };
    return run_fixed_point(Measure::skld, matrices, cfg, step);
}

} // namespace

HpdMatrix weighted_arithmetic_mean(const std::vector<HpdMatrix>& matrices,
                                   const std::vector<double>& weights) {
    check_same_dims(matrices, "weighted_arithmetic_mean");
    if (weights.size() != matrices.size())
        throw UsageError("weighted_arithmetic_mean: weight/matrix count mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0)
            throw UsageError("weighted_arithmetic_mean: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "weighted_arithmetic_mean: weights sum to " << sum << ", expected 1";
        throw UsageError(msg.str());
    }
    const Eigen::Index n = matrices.front().dim();
    CMatrix acc = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < matrices.size(); ++i)
        acc += weights[i] * matrices[i].m();
    return HpdMatrix::trusted(HermitianMatrix(acc));
}

HpdMatrix arithmetic_mean(const std::vector<HpdMatrix>& matrices) {
    check_same_dims(matrices, "arithmetic_mean");
    const Eigen::Index n = matrices.front().dim();
    CMatrix acc = CMatrix::Zero(n, n);
    for (const HpdMatrix& r : matrices)
        acc += r.m();
    acc /= static_cast<double>(matrices.size());
    return HpdMatrix::trusted(HermitianMatrix(acc));
}

double median_objective(Measure measure, const HpdMatrix& r,
                        const std::vector<HpdMatrix>& matrices) {
    check_same_dims(matrices, "median_objective");
    double acc = 0.0;
    for (const HpdMatrix& m : matrices)
        acc += dist(measure, r, m);
    return acc;
}

MedianResult geometric_median(Measure measure, const std::vector<HpdMatrix>& matrices,
                              const MedianSolverConfig& cfg) {
    cfg.validate();
    check_same_dims(matrices, "geometric_median");
    if (measure == Measure::airm)
        throw UsageError("geometric_median: no fixed-point iteration for the AIRM median");
    if (matrices.size() == 1) {
        MedianResult out{matrices.front()};
        out.converged = true;
        return out;
    }
    switch (measure) {
    case Measure::lem:
        return solve_lem(matrices, cfg);
    case Measure::jbld:
        return solve_jbld(matrices, cfg);
    case Measure::skld:
        return solve_skld(matrices, cfg);
    default:
        throw UsageError("geometric_median: unknown measure");
    }
}

} // namespace mig
