#include <cmath>
#include <random>

#include "doctest.h"

#include "mig/anisotropy.hpp"
#include "mig/errors.hpp"
#include "oracle.hpp"

using namespace mig;

namespace {

HpdMatrix diag_hpd(std::initializer_list<double> diag) {
    const int n = static_cast<int>(diag.size());
    CMatrix m = CMatrix::Zero(n, n);
    int i = 0;
    for (double v : diag)
        m(i, i) = v, ++i;
    return HpdMatrix(m);
}

HpdMatrix iso(double c, int n) {
    return HpdMatrix(CMatrix(c * CMatrix::Identity(n, n)));
}

const std::vector<Measure> kMeasures{Measure::lem, Measure::jbld, Measure::skld};

} // namespace

TEST_SUITE("anisotropy") {

TEST_CASE("isotropic matrices have zero anisotropy") {
    for (double c : {0.1, 1.0, 10.0})
        for (Measure m : kMeasures) {
            const AnisotropyReport rep = anisotropy(m, iso(c, 4));
            CHECK(rep.index <= 1e-12);
            CHECK(rep.epsilon_star == doctest::Approx(c).epsilon(1e-8));
        }
}

TEST_CASE("LEM closed form: nearest isotropic point is the log-mean") {
    const double e2 = std::exp(2.0);
    const AnisotropyReport rep = anisotropy(Measure::lem, diag_hpd({1.0, e2}));
    // log eigenvalues {0, 2}: epsilon* = e^1, index = (0-1)^2 + (2-1)^2 = 2.
    CHECK(rep.epsilon_star == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
    CHECK(rep.index == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("SKLD closed form on diag(1, 4)") {
    const AnisotropyReport rep = anisotropy(Measure::skld, diag_hpd({1.0, 4.0}));
    // epsilon* = sqrt(sum lambda / sum 1/lambda) = sqrt(5 / 1.25) = 2;
    // index = (1/2)(5) + 2(1.25) - 4 = 1.
    CHECK(rep.epsilon_star == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(rep.index == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("JBLD closed form on diag(1, 4)") {
    const AnisotropyReport rep = anisotropy(Measure::jbld, diag_hpd({1.0, 4.0}));
    // Root of 2(1/(1+e) + 1/(4+e)) = 2/e is e = 2; index =
    // ln(3/2) + ln(6/2) - ln 2 - (1/2) ln 4 = ln 4.5 - ln 4.
    CHECK(rep.epsilon_star == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(rep.index == doctest::Approx(std::log(4.5) - std::log(4.0)).epsilon(1e-10));
}

TEST_CASE("jbld_epsilon_star root quality and known roots") {
    RVector lam2(2);
    lam2 << 1.0, 1.0;
    CHECK(jbld_epsilon_star(lam2) == doctest::Approx(1.0).epsilon(1e-12));
    lam2 << 1.0, 4.0;
    CHECK(jbld_epsilon_star(lam2) == doctest::Approx(2.0).epsilon(1e-12));

    std::mt19937_64 rng(167);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 7);
        RVector lam(n);
        for (int i = 0; i < n; ++i)
            lam[i] = std::pow(10.0, unif(rng));
        const double eps = jbld_epsilon_star(lam);
        CHECK(eps >= lam.minCoeff() * (1.0 - 1e-9));
        CHECK(eps <= lam.maxCoeff() * (1.0 + 1e-9));
        double g = -n / eps;
        for (int i = 0; i < n; ++i)
            g += 2.0 / (lam[i] + eps);
        CHECK(std::abs(g) <= 1e-12 * n / eps);
    }
}

TEST_CASE("anisotropy is scale invariant") {
    std::mt19937_64 rng(173);
    const HpdMatrix r = oracle::random_hpd(rng, 4);
    for (Measure m : kMeasures) {
        const AnisotropyReport base = anisotropy(m, r);
        for (double c : {0.01, 5.0, 300.0}) {
            const AnisotropyReport scaled = anisotropy(m, HpdMatrix(CMatrix(c * r.m())));
            CHECK(scaled.index == doctest::Approx(base.index).epsilon(1e-10));
            CHECK(scaled.epsilon_star ==
                  doctest::Approx(c * base.epsilon_star).epsilon(1e-10));
        }
    }
}

TEST_CASE("anisotropy is unitary invariant") {
    std::mt19937_64 rng(179);
    const HpdMatrix r = oracle::random_hpd(rng, 4);
    const CMatrix u = oracle::random_unitary(rng, 4);
    const HpdMatrix rotated(CMatrix(u * r.m() * u.adjoint()));
    for (Measure m : kMeasures)
        CHECK(anisotropy(m, rotated).index ==
              doctest::Approx(anisotropy(m, r).index).epsilon(1e-9));
}

TEST_CASE("epsilon_star minimizes the distance to the isotropic line") {
    std::mt19937_64 rng(181);
    for (Measure m : kMeasures) {
        const HpdMatrix r = oracle::random_hpd(rng, 3);
        const AnisotropyReport rep = anisotropy(m, r);
        const auto f = [&](double eps) { return dist_sq(m, r, iso(eps, 3)); };
        // Index value is attained at epsilon_star ...
        CHECK(rep.index == doctest::Approx(f(rep.epsilon_star)).epsilon(1e-9));
        // ... and no grid point beats it.
        const double lo = 0.05 * rep.epsilon_star, hi = 20.0 * rep.epsilon_star;
        const double best = oracle::minimize_scalar(f, lo, hi);
        CHECK(f(rep.epsilon_star) <= f(best) + 1e-9);
        CHECK(rep.epsilon_star == doctest::Approx(best).epsilon(1e-5));
    }
}

TEST_CASE("AIRM anisotropy is rejected") {
    CHECK_THROWS_AS(anisotropy(Measure::airm, iso(1.0, 2)), UsageError);
}

TEST_CASE("ad_ratio") {
    CHECK(ad_ratio(2.0, 0.5) == doctest::Approx(4.0));
    CHECK_THROWS_AS(ad_ratio(1.0, 0.0), DegenerateIsotropyError);
    CHECK_THROWS_AS(ad_ratio(-1.0, 1.0), UsageError);
    CHECK_THROWS_AS(ad_ratio(1.0, -2.0), UsageError);
}

} // TEST_SUITE
