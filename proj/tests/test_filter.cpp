#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "mig/errors.hpp"
#include "mig/filter.hpp"
#include "oracle.hpp"

using namespace mig;

namespace {

HpdMatrix hpd1(double v) {
    CMatrix m(1, 1);
    m(0, 0) = v;
    return HpdMatrix(m);
}

std::vector<HpdMatrix> random_cells(std::mt19937_64& rng, int n, int count) {
    std::vector<HpdMatrix> v;
    for (int i = 0; i < count; ++i)
        v.push_back(oracle::random_hpd(rng, n));
    return v;
}

const std::vector<Measure> kMeasures{Measure::lem, Measure::jbld, Measure::skld};

} // namespace

TEST_SUITE("filter") {

TEST_CASE("parameter validation") {
    FilterParams p;
    p.m = 4; // window must be odd
    CHECK_THROWS_AS(p.validate(), UsageError);
    p.m = -3;
    CHECK_THROWS_AS(p.validate(), UsageError);
    p.m = 11;
    p.h = 0.0;
    CHECK_THROWS_AS(p.validate(), UsageError);
    p.h = 1.5;
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("weights over identical neighbors are uniform") {
    std::mt19937_64 rng(127);
    const HpdMatrix r = oracle::random_hpd(rng, 3);
    for (Measure m : kMeasures) {
        const auto w = filter_weights(r, {r, r, r, r, r}, 1.5, m);
        REQUIRE(w.size() == 5);
        for (double wi : w)
            CHECK(wi == doctest::Approx(0.2).epsilon(1e-12));
    }
}

TEST_CASE("two-point window reproduces the logistic weight split") {
    // d^2(center, neighbor) = h^2 makes the weights (1/(1+e^-1), e^-1/(1+e^-1)).
    const double h = 1.5;
    const HpdMatrix center = hpd1(1.0);
    const HpdMatrix neighbor = hpd1(std::exp(h)); // LEM: d^2 = h^2
    const auto w = filter_weights(center, {center, neighbor}, h, Measure::lem);
    REQUIRE(w.size() == 2);
    const double expected0 = 1.0 / (1.0 + std::exp(-1.0));
    CHECK(w[0] == doctest::Approx(expected0).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(1.0 - expected0).epsilon(1e-12));
}

TEST_CASE("weights sum to one on random windows") {
    std::mt19937_64 rng(131);
    for (int rep = 0; rep < 20; ++rep) {
        const auto cells = random_cells(rng, 3, 7);
        for (Measure m : kMeasures) {
            const auto w = filter_weights(cells[3], cells, 1.5, m);
            double sum = 0.0;
            for (double wi : w) {
                CHECK(wi >= 0.0);
                sum += wi;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("huge bandwidth flattens the weights") {
    std::mt19937_64 rng(137);
    const auto cells = random_cells(rng, 3, 9);
    const auto w = filter_weights(cells[4], cells, 1e6, Measure::lem);
    for (double wi : w)
        CHECK(wi == doctest::Approx(1.0 / 9).epsilon(1e-9));
}

TEST_CASE("an outlier window keeps nearly all weight on the center") {
    // Neighbors at LEM distance 3h from the center: relative weight e^-9.
    const double h = 1.0;
    const HpdMatrix center = hpd1(1.0);
    const HpdMatrix far = hpd1(std::exp(3.0 * h));
    const std::vector<HpdMatrix> window{center, far, far, far, far, far};
    const auto w = filter_weights(center, window, h, Measure::lem);
    CHECK(w[0] >= 0.99);
}

TEST_CASE("window of one is the identity") {
    std::mt19937_64 rng(139);
    const auto cells = random_cells(rng, 4, 6);
    FilterParams p;
    p.m = 1;
    p.h = 2.0;
    p.measure = Measure::jbld;
    const auto out = manifold_filter(cells, p);
    REQUIRE(out.size() == cells.size());
    for (size_t i = 0; i < cells.size(); ++i)
        CHECK((out[i].m() - cells[i].m()).norm() == 0.0);
}

TEST_CASE("filtering equal cells is the identity") {
    std::mt19937_64 rng(149);
    const HpdMatrix r = oracle::random_hpd(rng, 3);
    const std::vector<HpdMatrix> cells(12, r);
    FilterParams p; // m = 11, h = 1.5, lem
    const auto out = manifold_filter(cells, p);
    for (const HpdMatrix& o : out)
        CHECK((o.m() - r.m()).norm() <= 1e-13 * r.m().norm());
}

TEST_CASE("output is a window-local convex combination") {
    std::mt19937_64 rng(151);
    auto cells = random_cells(rng, 3, 20);
    FilterParams p;
    p.m = 5;
    p.h = 2.0;
    p.measure = Measure::lem;
    const auto out = manifold_filter(cells, p);

    // Minimum eigenvalue of each output dominates the window's worst input.
    for (int c = 0; c < 20; ++c) {
        const int lo = std::max(0, c - 2), hi = std::min(19, c + 2);
        double min_in = std::numeric_limits<double>::infinity();
        for (int i = lo; i <= hi; ++i)
            min_in = std::min(min_in, herm_eig(cells[i]).eigenvalues[0]);
        CHECK(herm_eig(out[c]).eigenvalues[0] >= min_in - 1e-10);
    }

    // Cells outside the window cannot influence the output.
    auto tweaked = cells;
    tweaked[10] = oracle::random_hpd(rng, 3);
    const auto out2 = manifold_filter(tweaked, p);
    CHECK((out2[0].m() - out[0].m()).norm() == 0.0);
    CHECK((out2[19].m() - out[19].m()).norm() == 0.0);
    CHECK((out2[10].m() - out[10].m()).norm() > 0.0);
}

TEST_CASE("edge windows truncate instead of wrapping") {
    std::mt19937_64 rng(157);
    auto cells = random_cells(rng, 2, 6);
    FilterParams p;
    p.m = 11; // wider than the array
    p.h = 1e6; // near-uniform weights expose the window content
    p.measure = Measure::lem;
    const auto out = manifold_filter(cells, p);
    // Cell 0's window is cells 0..5; with flat weights it is close to the
    // plain arithmetic mean of all six cells.
    const HpdMatrix mean = arithmetic_mean(cells);
    CHECK((out[0].m() - mean.m()).norm() <= 1e-6 * mean.m().norm());
}

TEST_CASE("two-cluster windows sharpen the cluster gap") {
    // Clutter-like cluster plus a displaced cluster: after filtering, the
    // between-cluster distance shrinks less than the within-cluster spread.
    std::mt19937_64 rng(163);
    for (Measure m : kMeasures) {
        std::vector<HpdMatrix> cells;
        const HpdMatrix base = oracle::random_hpd(rng, 3);
        const HpdMatrix shifted(CMatrix(8.0 * base.m()));
        std::normal_distribution<double> gauss(0.0, 0.05);
        auto jitter = [&](const HpdMatrix& r) {
            CMatrix noise(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    noise(i, j) = Complex(gauss(rng), gauss(rng));
            const HermitianMatrix sym(noise);
            return HpdMatrix(CMatrix(r.m() + r.m().norm() * 0.02 * sym.m()));
        };
        for (int i = 0; i < 8; ++i)
            cells.push_back(jitter(base));
        for (int i = 0; i < 8; ++i)
            cells.push_back(jitter(shifted));

        FilterParams p;
        p.m = 5;
        p.h = (m == Measure::jbld) ? 0.5 : 1.5;
        p.measure = m;
        const auto out = manifold_filter(cells, p);

        auto spread = [&](const std::vector<HpdMatrix>& v, int lo, int hi) {
            double s = 0.0;
            int cnt = 0;
            for (int i = lo; i < hi; ++i)
                for (int j = i + 1; j < hi; ++j) {
                    s += dist(m, v[i], v[j]);
                    ++cnt;
                }
            return s / cnt;
        };
        const double gap_before = dist(m, cells[3], cells[11]);
        const double gap_after = dist(m, out[3], out[11]);
        const double within_before = spread(cells, 0, 8);
        const double within_after = spread(out, 0, 8);
        CHECK(gap_after / within_after >= gap_before / within_before);
    }
}

} // TEST_SUITE
