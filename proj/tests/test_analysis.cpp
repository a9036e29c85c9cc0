#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "zeno/analysis.hpp"
#include "zeno/lindblad.hpp"

using namespace zeno;
using analysis::Window;

namespace {

TimeSeries closed(double kappa, std::size_t n = 2001, double t_max = 5.0) {
    return lindblad::closed_form_series({kappa, 100.0, 1.0}, TimeGrid{t_max, n});
}

TimeSeries constant(double value, std::vector<double> t) {
    std::vector<double> v(t.size(), value);
    return TimeSeries(std::move(t), std::move(v), EngineTag::Bath, "const");
}

} // namespace

TEST(Compare, IdentityIsZero) {
    const auto a = closed(2.0);
    const auto r = analysis::compare(a, a);
    EXPECT_EQ(r.max_abs, 0.0);
    EXPECT_EQ(r.l2, 0.0);
    EXPECT_FALSE(r.resampled);
}

TEST(Compare, SymmetricAndRmsBoundedByMax) {
    const auto a = closed(2.0, 501);
    const auto b = closed(8.0, 333, 4.0);
    const auto ab = analysis::compare(a, b);
    const auto ba = analysis::compare(b, a);
    EXPECT_TRUE(ab.resampled);
    EXPECT_EQ(ab.max_abs, ba.max_abs);
    EXPECT_EQ(ab.l2, ba.l2);
    EXPECT_LE(ab.l2, ab.max_abs);
    EXPECT_GT(ab.max_abs, 0.0);
    EXPECT_LE(ab.grid.back(), 4.0);
}

TEST(Compare, DisjointRangesRejected) {
    const auto a = constant(0.5, {0.0, 1.0});
    const auto b = constant(0.5, {2.0, 3.0});
    EXPECT_THROW(analysis::compare(a, b), DomainError);
}

TEST(Compare, LinearResamplingIsExactForLinearData) {
    const TimeSeries a({0.0, 1.0, 2.0}, {0.0, 0.5, 1.0}, EngineTag::Bath, "");
    const TimeSeries b({0.0, 0.5, 1.5, 2.0}, {0.0, 0.25, 0.75, 1.0}, EngineTag::Collision, "");
    const auto r = analysis::compare(a, b);
    EXPECT_TRUE(r.resampled);
    EXPECT_EQ(r.grid.size(), 5u);
    EXPECT_NEAR(r.max_abs, 0.0, 1e-15);
}

TEST(Retention, ConstantSeries) {
    EXPECT_DOUBLE_EQ(analysis::retention(constant(1.0, {0.0, 0.7, 5.0}), {0.0, 5.0}), 1.0);
}

TEST(Retention, CosineLawOverOnePeriodIsOneHalf) {
    // p = (1 + cos 2t)/2 has period pi.
    const auto s = lindblad::closed_form_series({0.0, 100.0, 1.0}, TimeGrid{std::numbers::pi, 4001});
    EXPECT_NEAR(analysis::retention(s, {0.0, std::numbers::pi}), 0.5, 1e-7);
}

TEST(Retention, ZenoBeatsCritical) {
    EXPECT_GT(analysis::retention(closed(32.0), {0.0, 5.0}), analysis::retention(closed(2.0), {0.0, 5.0}));
}

TEST(Retention, WindowErrors) {
    const auto s = closed(2.0);
    EXPECT_THROW(analysis::retention(s, {1.0, 1.0}), DomainError);
    EXPECT_THROW(analysis::retention(s, {2.0, 1.0}), DomainError);
    EXPECT_THROW(analysis::retention(s, {0.0, 6.0}), DomainError);
}

TEST(Retention, InteriorWindowInterpolatesEdges) {
    const TimeSeries s({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}, EngineTag::Bath, "");
    // Tent function on [0.5, 1.5]: average 0.75.
    EXPECT_NEAR(analysis::retention(s, {0.5, 1.5}), 0.75, 1e-15);
}

TEST(Retention, MonotoneUnderPointwiseDominanceProperty) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<double> t = TimeGrid{5.0, 200}.times();
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> lo(t.size()), hi(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            lo[i] = u(rng);
            hi[i] = lo[i] + (1.0 - lo[i]) * u(rng);
        }
        const TimeSeries a(t, hi, EngineTag::Bath, ""), b(t, lo, EngineTag::Bath, "");
        const Window w{5.0 * u(rng) * 0.5, 2.5 + 2.5 * u(rng)};
        EXPECT_GE(analysis::retention(a, w), analysis::retention(b, w));
    }
}

TEST(Retention, IncreasingInKappaAboveTurningPoint) {
    double prev = 0.0;
    for (double k : {2.0, 3.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
        const double r = analysis::retention(closed(k), {0.0, 5.0});
        EXPECT_GT(r, prev) << "kappa=" << k;
        prev = r;
    }
}

// Retention values below were obtained independently by adaptive quadrature of the
// closed form (scipy.integrate.quad) and match the trapezoid sums to ~1e-6.
TEST(Retention, MatchesQuadratureReference) {
    EXPECT_NEAR(analysis::retention(closed(0.125), {0.0, 5.0}), 0.37294459406180763, 1e-6);
    EXPECT_NEAR(analysis::retention(closed(0.5), {0.0, 5.0}), 0.2345887790238872, 1e-6);
    EXPECT_NEAR(analysis::retention(closed(2.0), {0.0, 5.0}), 0.24980705029850947, 1e-6);
    EXPECT_NEAR(analysis::retention(closed(32.0), {0.0, 5.0}), 0.8603761843850453, 1e-6);
}

TEST(TurningPointSweep, FivePointSet) {
    const std::vector<double> k{0.125, 0.5, 2.0, 8.0, 32.0};
    const auto r = analysis::turning_point_sweep(1.0, k, {0.0, 5.0});
    ASSERT_TRUE(r.kappa_star.has_value());
    EXPECT_GE(*r.kappa_star, 1.0);
    EXPECT_LE(*r.kappa_star, 4.0);
    for (double v : r.retention) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
    EXPECT_EQ(r.regimes[2], lindblad::Regime::Critical);
}

TEST(TurningPointSweep, StableUnderFarAwayAdditions) {
    const std::vector<double> base{0.125, 0.5, 1.0, 2.0, 4.0, 8.0, 32.0};
    const std::vector<double> extended{0.01, 0.03, 0.125, 0.5, 1.0, 2.0, 4.0, 8.0, 32.0, 64.0, 128.0};
    const auto a = analysis::turning_point_sweep(1.0, base, {0.0, 5.0});
    const auto b = analysis::turning_point_sweep(1.0, extended, {0.0, 5.0});
    ASSERT_TRUE(a.kappa_star && b.kappa_star);
    EXPECT_LE(std::abs(*a.kappa_star - *b.kappa_star), 0.05 * *a.kappa_star);
}

TEST(TurningPointSweep, NoInteriorMinimumReported) {
    // On a short window larger kappa always retains more: minimum at the first point.
    const std::vector<double> k{0.01, 0.02, 0.05, 0.1, 2.5};
    const std::vector<double> shifted{0.01, 0.02, 0.05, 0.1, 0.2};
    EXPECT_THROW(analysis::turning_point_sweep(1.0, shifted, {0.0, 5.0}), DomainError);  // does not span 2G
    const auto r = analysis::turning_point_sweep(1.0, k, {0.0, 0.5});
    EXPECT_FALSE(r.kappa_star.has_value());
}

TEST(TurningPointSweep, Preconditions) {
    EXPECT_THROW(analysis::turning_point_sweep(1.0, std::vector<double>{0.5, 1.0, 4.0, 8.0}, {0.0, 5.0}),
                 DomainError);
    EXPECT_THROW(analysis::turning_point_sweep(1.0, std::vector<double>{0.5, 1.0, 1.0, 4.0, 8.0}, {0.0, 5.0}),
                 DomainError);
}

TEST(ConvergenceStudy, FirstOrderApproach) {
    const std::vector<double> t{4e-3, 2e-3, 1e-3};
    const auto r = analysis::convergence_study(2.0, t);
    ASSERT_EQ(r.rows.size(), 3u);
    EXPECT_TRUE(r.monotone);
    for (double ratio : r.ratios()) {
        EXPECT_GE(ratio, 1.5);
        EXPECT_LE(ratio, 2.5);
    }
    EXPECT_LE(r.rows.back().max_abs, 0.02);
    EXPECT_EQ(r.rows.back().n_collisions, 5000u);
    // Richardson extrapolation of the first-order error to t_int -> 0.
    const double limit = 2.0 * r.rows[2].max_abs - r.rows[1].max_abs;
    EXPECT_LE(std::abs(limit), 1e-7);
}

TEST(ConvergenceStudy, Preconditions) {
    EXPECT_THROW(analysis::convergence_study(2.0, std::vector<double>{2e-3, 1e-3}), DomainError);
    EXPECT_THROW(analysis::convergence_study(2.0, std::vector<double>{1e-3, 2e-3, 4e-3}), DomainError);
}
