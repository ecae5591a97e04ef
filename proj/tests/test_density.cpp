#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "truncprice/density.hpp"

using namespace truncprice;

TEST(Cauchy, StandardDensityMatchesFormulaPointwise) {
    const auto c = ContinuousDensity::cauchy();
    for (double x = -50.0; x <= 50.0; x += 0.37) {
        EXPECT_EQ(c.density(x), 1.0 / (std::numbers::pi * (x * x + 1.0))) << x;
    }
}

TEST(Cauchy, SurvivalLimitsAndMonotonicity) {
    const auto c = ContinuousDensity::cauchy(2.0, 3.0);
    EXPECT_NEAR(c.survival(-1e300), 1.0, 1e-15);
    EXPECT_NEAR(c.survival(1e300), 0.0, 1e-15);
    EXPECT_EQ(c.survival(2.0), 0.5);
    double prev = 1.0;
    for (double x = -1e4; x <= 1e4; x += 17.3) {
        const double s = c.survival(x);
        EXPECT_LT(s, prev);
        prev = s;
    }
}

TEST(Cauchy, SurvivalInverseKnownValues) {
    const auto c = ContinuousDensity::cauchy();
    // tan(0.49 pi) = 31.8205159537739580...
    EXPECT_NEAR(c.survival_inverse(0.01), 31.820515953773958, 1e-12);
    EXPECT_EQ(c.survival_inverse(0.5), 0.0);
    EXPECT_NEAR(c.survival_inverse(0.25), 1.0, 1e-15);
    EXPECT_NEAR(c.survival_inverse(0.75), -1.0, 1e-15);
}

TEST(Cauchy, SurvivalInverseRoundTrip) {
    const auto c = ContinuousDensity::cauchy();
    for (double mag : {1e-3, 0.1, 1.0, 7.5, 100.0, 1e3, 1e4, 1e5, 1e6}) {
        for (double u : {mag, -mag}) {
            const double back = c.survival_inverse(c.survival(u));
            EXPECT_NEAR(back, u, 1e-9 * std::abs(u)) << u;
        }
    }
}

TEST(Cauchy, LocationScale) {
    const auto c = ContinuousDensity::cauchy(5.0, 2.0);
    EXPECT_NEAR(c.density(5.0), 1.0 / (2.0 * std::numbers::pi), 1e-16);
    EXPECT_NEAR(c.survival_inverse(0.25), 7.0, 1e-14);
}

TEST(Gaussian, MedianAndKnownQuantiles) {
    const auto g = ContinuousDensity::gaussian();
    EXPECT_EQ(g.survival_inverse(0.5), 0.0);
    // Standard normal 97.5% point.
    EXPECT_NEAR(g.survival_inverse(0.025), 1.959963984540054, 1e-10);
    EXPECT_NEAR(g.survival_inverse(0.975), -1.959963984540054, 1e-10);
    EXPECT_NEAR(g.density(0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-16);
}

TEST(Gaussian, SurvivalInverseRoundTrip) {
    const auto g = ContinuousDensity::gaussian(1.0, 2.0);
    for (double u : {-3.0, -0.5, 0.3, 1.0, 4.0, 15.0}) {
        EXPECT_NEAR(g.survival_inverse(g.survival(u)), u, 1e-10 * std::max(1.0, std::abs(u)));
    }
}

TEST(Density, RejectsBadParameters) {
    EXPECT_THROW(ContinuousDensity::cauchy(0.0, 0.0), Error);
    EXPECT_THROW(ContinuousDensity::gaussian(0.0, -1.0), Error);
    EXPECT_THROW(ContinuousDensity::cauchy().survival_inverse(0.0), Error);
    EXPECT_THROW(ContinuousDensity::cauchy().survival_inverse(1.0), Error);
}
