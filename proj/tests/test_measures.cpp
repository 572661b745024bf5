#include <cmath>
#include <random>

#include "doctest.h"

#include "mig/errors.hpp"
#include "mig/measures.hpp"
#include "oracle.hpp"

using namespace mig;

namespace {

HpdMatrix hpd1(double v) {
    CMatrix m(1, 1);
    m(0, 0) = v;
    return HpdMatrix(m);
}

HpdMatrix congruent(const CMatrix& m, const HpdMatrix& x) {
    return HpdMatrix(CMatrix(m * x.m() * m.adjoint()));
}

} // namespace

TEST_SUITE("measures") {

TEST_CASE("measure names round-trip") {
    for (Measure m : {Measure::airm, Measure::lem, Measure::jbld, Measure::skld})
        CHECK(measure_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(measure_from_string("euclid"), UsageError);
}

TEST_CASE("self distance is zero") {
    std::mt19937_64 rng(31);
    const HpdMatrix r = oracle::random_hpd(rng, 4);
    for (Measure m : {Measure::airm, Measure::lem, Measure::jbld, Measure::skld}) {
        CHECK(std::abs(dist_sq(m, r, r)) <= 1e-10);
        CHECK(dist(m, r, r) >= 0.0);
    }
}

TEST_CASE("symmetry") {
    std::mt19937_64 rng(37);
    const HpdMatrix x = oracle::random_hpd(rng, 4);
    const HpdMatrix y = oracle::random_hpd(rng, 4);
    for (Measure m : {Measure::airm, Measure::lem, Measure::jbld, Measure::skld}) {
        const double xy = dist_sq(m, x, y);
        const double yx = dist_sq(m, y, x);
        CHECK(xy == doctest::Approx(yx).epsilon(1e-10));
        CHECK(xy > 0.0);
    }
}

TEST_CASE("scalar closed forms") {
    const HpdMatrix a = hpd1(2.0);
    const HpdMatrix b = hpd1(8.0);
    // AIRM and LEM coincide on commuting matrices: |ln 2 - ln 8| = ln 4.
    CHECK(dist(Measure::airm, a, b) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(dist(Measure::lem, a, b) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

    const HpdMatrix one = hpd1(1.0);
    const HpdMatrix four = hpd1(4.0);
    // JBLD: ln((1+4)/2) - (ln 1 + ln 4)/2 = ln 2.5 - ln 2 = ln 1.25.
    CHECK(dist_sq(Measure::jbld, one, four) ==
          doctest::Approx(std::log(1.25)).epsilon(1e-12));
    // SKLD: 4/1 + 1/4 - 2 = 2.25.
    CHECK(dist_sq(Measure::skld, one, four) == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(dist(Measure::skld, one, four) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("dist is the square root of dist_sq") {
    std::mt19937_64 rng(41);
    const HpdMatrix x = oracle::random_hpd(rng, 3);
    const HpdMatrix y = oracle::random_hpd(rng, 3);
    for (Measure m : {Measure::airm, Measure::lem, Measure::jbld, Measure::skld})
        CHECK(dist(m, x, y) ==
              doctest::Approx(std::sqrt(dist_sq(m, x, y))).epsilon(1e-14));
}

TEST_CASE("affine invariance of AIRM, JBLD, and SKLD") {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> gauss;
    const HpdMatrix x = oracle::random_hpd(rng, 4);
    const HpdMatrix y = oracle::random_hpd(rng, 4);
    CMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m(i, j) = Complex(gauss(rng), gauss(rng));
    REQUIRE(std::abs(m.determinant()) > 1e-8);
    for (Measure meas : {Measure::airm, Measure::jbld, Measure::skld}) {
        const double before = dist_sq(meas, x, y);
        const double after = dist_sq(meas, congruent(m, x), congruent(m, y));
        CHECK(after == doctest::Approx(before).epsilon(1e-8));
    }
}

TEST_CASE("LEM invariances: unitary congruence, inversion, scaling") {
    std::mt19937_64 rng(47);
    const HpdMatrix x = oracle::random_hpd(rng, 4);
    const HpdMatrix y = oracle::random_hpd(rng, 4);
    const double base = dist_sq(Measure::lem, x, y);

    const CMatrix u = oracle::random_unitary(rng, 4);
    CHECK(dist_sq(Measure::lem, congruent(u, x), congruent(u, y)) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(dist_sq(Measure::lem, inv_m(x), inv_m(y)) ==
          doctest::Approx(base).epsilon(1e-9));
    const HpdMatrix cx(CMatrix(3.7 * x.m()));
    const HpdMatrix cy(CMatrix(3.7 * y.m()));
    CHECK(dist_sq(Measure::lem, cx, cy) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("SKLD inversion invariance") {
    std::mt19937_64 rng(53);
    const HpdMatrix x = oracle::random_hpd(rng, 3);
    const HpdMatrix y = oracle::random_hpd(rng, 3);
    CHECK(dist_sq(Measure::skld, inv_m(x), inv_m(y)) ==
          doctest::Approx(dist_sq(Measure::skld, x, y)).epsilon(1e-9));
}

TEST_CASE("dimension mismatch is a usage error") {
    std::mt19937_64 rng(59);
    const HpdMatrix x = oracle::random_hpd(rng, 2);
    const HpdMatrix y = oracle::random_hpd(rng, 3);
    for (Measure m : {Measure::airm, Measure::lem, Measure::jbld, Measure::skld})
        CHECK_THROWS_AS(dist_sq(m, x, y), UsageError);
}

TEST_CASE("clamp_dist_sq window") {
    CHECK(clamp_dist_sq(0.5) == 0.5);
    CHECK(clamp_dist_sq(0.0) == 0.0);
    CHECK(clamp_dist_sq(-1e-13) == 0.0);
    CHECK_THROWS_AS(clamp_dist_sq(-1e-11), NumericalError);
}

TEST_CASE("cached forms agree with the generic entry point") {
    std::mt19937_64 rng(61);
    const HpdMatrix x = oracle::random_hpd(rng, 4);
    const HpdMatrix y = oracle::random_hpd(rng, 4);

    CHECK(airm_dist_sq(x, y) == doctest::Approx(dist_sq(Measure::airm, x, y)));
    CHECK(lem_dist_sq(log_m(x), log_m(y)) ==
          doctest::Approx(dist_sq(Measure::lem, x, y)).epsilon(1e-12));
    CHECK(jbld_dist_sq(x.m(), y.m(), log_det(x.m()), log_det(y.m())) ==
          doctest::Approx(dist_sq(Measure::jbld, x, y)).epsilon(1e-12));
    CHECK(skld_dist_sq(x.m(), inv_m(x).m(), y.m(), inv_m(y).m()) ==
          doctest::Approx(dist_sq(Measure::skld, x, y)).epsilon(1e-12));
}

TEST_CASE("AIRM matches the generalized-eigenvalue formula on 2x2") {
    std::mt19937_64 rng(67);
    const HpdMatrix x = oracle::random_hpd_2x2(rng);
    const HpdMatrix y = oracle::random_hpd_2x2(rng);
    // d^2 = sum ln^2 lambda_i with lambda the eigenvalues of X^{-1/2} Y X^{-1/2}.
    const HpdMatrix isx = inv_sqrt_m(x);
    const SpectralDecomposition eig =
        herm_eig(HermitianMatrix(CMatrix(isx.m() * y.m() * isx.m())));
    double expected = 0.0;
    for (int i = 0; i < 2; ++i)
        expected += std::pow(std::log(eig.eigenvalues[i]), 2);
    CHECK(dist_sq(Measure::airm, x, y) == doctest::Approx(expected).epsilon(1e-9));
}

} // TEST_SUITE
