#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "mig/errors.hpp"
#include "mig/median.hpp"
#include "oracle.hpp"

using namespace mig;

namespace {

HpdMatrix hpd1(double v) {
    CMatrix m(1, 1);
    m(0, 0) = v;
    return HpdMatrix(m);
}

double scalar_of(const HpdMatrix& r) { return r.m()(0, 0).real(); }

const std::vector<Measure> kSolvable{Measure::lem, Measure::jbld, Measure::skld};

std::vector<HpdMatrix> random_inputs(std::mt19937_64& rng, int n, int k) {
    std::vector<HpdMatrix> v;
    v.reserve(k);
    for (int i = 0; i < k; ++i)
        v.push_back(oracle::random_hpd(rng, n));
    return v;
}

} // namespace

TEST_SUITE("median") {

TEST_CASE("scm of orthonormal samples") {
    SampleVector e1(2), e2(2);
    e1 << Complex(1, 0), Complex(0, 0);
    e2 << Complex(0, 0), Complex(1, 0);
    const HpdMatrix r = scm({e1, e2});
    CHECK((r.m() - 0.5 * CMatrix::Identity(2, 2)).norm() <= 1e-15);
}

TEST_CASE("scm loads when K < n") {
    SampleVector x(3);
    x << Complex(1, 0), Complex(0, 1), Complex(-1, 0);
    const HpdMatrix r = scm({x}); // rank one, needs loading
    CHECK(herm_eig(r).eigenvalues[0] > 0.0);
    CHECK_THROWS_AS(scm({}), UsageError);
}

TEST_CASE("weighted arithmetic mean and its weight checks") {
    const HpdMatrix a = HpdMatrix::identity(2);
    const HpdMatrix b(CMatrix(3.0 * CMatrix::Identity(2, 2)));
    const HpdMatrix mean = weighted_arithmetic_mean({a, b}, {0.25, 0.75});
    CHECK((mean.m() - 2.5 * CMatrix::Identity(2, 2)).norm() <= 1e-14);

    CHECK_THROWS_AS(weighted_arithmetic_mean({a, b}, {0.5, 0.6}), UsageError);
    CHECK_THROWS_AS(weighted_arithmetic_mean({a, b}, {1.5, -0.5}), UsageError);
    CHECK_THROWS_AS(weighted_arithmetic_mean({a, b}, {1.0}), UsageError);
}

TEST_CASE("median of identical inputs returns that input immediately") {
    std::mt19937_64 rng(71);
    const HpdMatrix r = oracle::random_hpd(rng, 3);
    for (Measure m : kSolvable) {
        const MedianResult res = geometric_median(m, {r, r, r, r});
        CHECK(res.converged);
        CHECK(res.iterations <= 2);
        CHECK((res.estimate.m() - r.m()).norm() <= 1e-8 * r.m().norm());
        CHECK(res.objective <= 1e-6);
    }
}

TEST_CASE("single input short-circuits") {
    std::mt19937_64 rng(73);
    const HpdMatrix r = oracle::random_hpd(rng, 2);
    const MedianResult res = geometric_median(Measure::lem, {r});
    CHECK(res.converged);
    CHECK(res.iterations == 0);
    CHECK((res.estimate.m() - r.m()).norm() == 0.0);
}

TEST_CASE("two inputs flag the nonunique minimizer") {
    std::mt19937_64 rng(79);
    const auto inputs = random_inputs(rng, 2, 2);
    for (Measure m : kSolvable) {
        const MedianResult res = geometric_median(m, inputs);
        CHECK(res.nonunique_warning);
    }
    const MedianResult three = geometric_median(Measure::lem, random_inputs(rng, 2, 3));
    CHECK_FALSE(three.nonunique_warning);
}

TEST_CASE("AIRM median is rejected") {
    std::mt19937_64 rng(83);
    CHECK_THROWS_AS(geometric_median(Measure::airm, random_inputs(rng, 2, 3)), UsageError);
}

TEST_CASE("empty and mismatched inputs are usage errors") {
    std::mt19937_64 rng(89);
    CHECK_THROWS_AS(geometric_median(Measure::lem, {}), UsageError);
    const std::vector<HpdMatrix> bad{oracle::random_hpd(rng, 2), oracle::random_hpd(rng, 3),
                                     oracle::random_hpd(rng, 2)};
    CHECK_THROWS_AS(geometric_median(Measure::lem, bad), UsageError);
}

TEST_CASE("LEM median of scalar matrices is the log-domain median") {
    const double e = std::exp(1.0);
    const std::vector<HpdMatrix> inputs{hpd1(1.0), hpd1(e), hpd1(e * e)};
    const MedianResult res = geometric_median(Measure::lem, inputs);
    // Geometric median of collinear log points {0, 1, 2} is the middle one.
    CHECK(scalar_of(res.estimate) == doctest::Approx(e).epsilon(1e-6));
}

TEST_CASE("median objective closed form for scalar inputs") {
    const double e = std::exp(1.0);
    const double f =
        median_objective(Measure::lem, hpd1(1.0), {hpd1(e), hpd1(e * e)});
    CHECK(f == doctest::Approx(3.0).epsilon(1e-12)); // |ln e| + |ln e^2|
}

TEST_CASE("SKLD scalar median matches a brute-force scalar minimizer") {
    const std::vector<HpdMatrix> inputs{hpd1(1.0), hpd1(1.0), hpd1(4.0)};
    const MedianResult res = geometric_median(Measure::skld, inputs);
    REQUIRE(res.converged);
    const auto objective = [&](double r) {
        return median_objective(Measure::skld, hpd1(r), inputs);
    };
    const double best = oracle::minimize_scalar(objective, 0.2, 10.0);
    CHECK(scalar_of(res.estimate) == doctest::Approx(best).epsilon(1e-5));
    CHECK(res.objective <= objective(best) + 1e-9);
}

TEST_CASE("JBLD scalar median matches a brute-force scalar minimizer") {
    // In log coordinates the scalar JBLD distance is concave away from zero,
    // so the 1x1 objective always bottoms out at an input. Use an instance
    // that is log-symmetric about 2: the global minimizer is the middle
    // input, and the fixed-point iteration descends straight into it.
    const std::vector<HpdMatrix> inputs{hpd1(1.0), hpd1(2.0), hpd1(4.0)};
    const MedianResult res = geometric_median(Measure::jbld, inputs);
    REQUIRE(res.converged);
    const auto objective = [&](double r) {
        return median_objective(Measure::jbld, hpd1(r), inputs);
    };
    const double best = oracle::minimize_scalar(objective, 0.1, 20.0);
    CHECK(scalar_of(res.estimate) == doctest::Approx(best).epsilon(1e-5));
    // The iteration approaches the non-smooth bottom sublinearly, so leave
    // room for the last sliver of objective.
    CHECK(res.objective <= objective(best) + 1e-5);
}

TEST_CASE("SKLD median commutes with inversion") {
    std::mt19937_64 rng(97);
    const auto inputs = random_inputs(rng, 3, 5);
    std::vector<HpdMatrix> inverted;
    for (const HpdMatrix& r : inputs)
        inverted.push_back(inv_m(r));
    const HpdMatrix med = geometric_median(Measure::skld, inputs).estimate;
    const HpdMatrix med_inv = geometric_median(Measure::skld, inverted).estimate;
    CHECK((inv_m(med).m() - med_inv.m()).norm() <= 1e-7 * med_inv.m().norm());
}

TEST_CASE("median is invariant to input permutation") {
    std::mt19937_64 rng(101);
    auto inputs = random_inputs(rng, 3, 6);
    for (Measure m : kSolvable) {
        const HpdMatrix a = geometric_median(m, inputs).estimate;
        auto shuffled = inputs;
        std::rotate(shuffled.begin(), shuffled.begin() + 2, shuffled.end());
        std::swap(shuffled[0], shuffled[3]);
        const HpdMatrix b = geometric_median(m, shuffled).estimate;
        CHECK((a.m() - b.m()).norm() <= 1e-8 * a.m().norm());
    }
}

TEST_CASE("median objective does not exceed any input's objective") {
    std::mt19937_64 rng(103);
    const auto inputs = random_inputs(rng, 3, 5);
    for (Measure m : kSolvable) {
        const MedianResult res = geometric_median(m, inputs);
        double best_input = std::numeric_limits<double>::infinity();
        for (const HpdMatrix& r : inputs)
            best_input = std::min(best_input, median_objective(m, r, inputs));
        CHECK(res.objective <= best_input + 1e-8);
    }
}

TEST_CASE("median improves on the arithmetic-mean initializer") {
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 5; ++rep) {
        const auto inputs = random_inputs(rng, 3, 7);
        const HpdMatrix init = arithmetic_mean(inputs);
        for (Measure m : kSolvable) {
            const MedianResult res = geometric_median(m, inputs);
            CHECK(res.objective <= median_objective(m, init, inputs) + 1e-10);
        }
    }
}

TEST_CASE("iteration budget exhausts into an unconverged result") {
    std::mt19937_64 rng(109);
    const auto inputs = random_inputs(rng, 3, 5);
    MedianSolverConfig cfg;
    cfg.max_iter = 1;
    const MedianResult res = geometric_median(Measure::jbld, inputs, cfg);
    CHECK_FALSE(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.final_step > 0.0);
}

TEST_CASE("solver config validation") {
    MedianSolverConfig bad_tol;
    bad_tol.tol = 0.0;
    CHECK_THROWS_AS(bad_tol.validate(), UsageError);
    MedianSolverConfig bad_iter;
    bad_iter.max_iter = 0;
    CHECK_THROWS_AS(bad_iter.validate(), UsageError);
}

TEST_CASE("fixed points match the 2x2 brute-force oracle") {
    // A light version of the acceptance sweep: one seeded instance per measure.
    std::mt19937_64 rng(113);
    std::vector<HpdMatrix> inputs;
    for (int i = 0; i < 5; ++i)
        inputs.push_back(oracle::random_hpd_2x2(rng, 30.0));
    for (Measure m : kSolvable) {
        const MedianResult res = geometric_median(m, inputs);
        REQUIRE(res.converged);
        const oracle::BruteForceResult ref =
            oracle::brute_force_median_2x2(m, inputs, 1e-9);
        CHECK(res.objective <= ref.objective * (1.0 + 1e-6) + 1e-12);
    }
}

} // TEST_SUITE
