#include <gtest/gtest.h>

#include <cmath>

#include "nric/errors.hpp"
#include "nric/harvester.hpp"
#include "support/oracles.hpp"

using namespace nric;

TEST(Harvester, BesselAgainstSeriesAndStdlib) {
    for (double x : {0.0, 0.5, 1.0, 2.0, 3.75, 5.0, 10.0, 20.0}) {
        const double ref = oracle::bessel_i0_series(x);
        EXPECT_NEAR(bessel_i0(x), ref, 1e-7);
        EXPECT_NEAR(bessel_i0(x) / ref, 1.0, 1e-13);
    }
    for (double x : {25.0, 31.0, 50.0, 200.0}) {
        EXPECT_NEAR(bessel_i0(x) / std::cyl_bessel_i(0.0, x), 1.0, 1e-12) << x;
    }
    EXPECT_THROW(bessel_i0(-2.0), ValidationError);
}

TEST(Harvester, ThirtyStagesClearOneVolt) {
    const double v = v_out(30, 0.05, 0.026);
    EXPECT_GT(v, 1.0);
    const double ref = 2 * 30 * 0.026 * std::log(oracle::bessel_i0_series(0.05 / 0.026));
    EXPECT_NEAR(v, ref, 1e-12);
    EXPECT_EQ(v_out(1, 0.0, 0.026), 0.0);
    EXPECT_THROW(v_out(0, 0.05), ValidationError);
}

TEST(Harvester, OutputIsLinearInStages) {
    EXPECT_NEAR(v_out(20, 0.05) / v_out(10, 0.05), 2.0, 1e-14);
}

TEST(Harvester, RectifierInputEquivalent) {
    const double f = 20e6, w = 2 * oracle::kPi * f;
    // Parallel R || C back to Z, then recover.
    const double r = 2e3, c = 1e-12;
    const Complex z = 1.0 / Complex(1.0 / r, w * c);
    const auto in = rect_input(z, f);
    EXPECT_NEAR(in.r_rect, r, 1e-9);
    EXPECT_NEAR(in.c_rect, c, 1e-24);
    EXPECT_TRUE(in.capacitive);
    const auto ind = rect_input({100.0, 30.0}, f);
    EXPECT_LT(ind.c_rect, 0.0);
    EXPECT_FALSE(ind.capacitive);
    EXPECT_THROW(rect_input({0.0, 10.0}, f), ValidationError);
}

TEST(Harvester, BoostResonanceNearTwentyMegahertz) {
    EXPECT_NEAR(boost_resonance(), 1.0 / (2 * oracle::kPi * std::sqrt(6.33e-6 * 10e-12)), 1e-3);
    EXPECT_NEAR(boost_resonance() / 20e6, 1.0, 0.01);
}

TEST(Harvester, TrendsWithStageCount) {
    const StageScaling s;
    double r_prev = 0.0, c_prev = 1.0;
    for (int n = 1; n <= 40; ++n) {
        const auto in = rect_input(s.z_in(n, 20e6), 20e6);
        EXPECT_GT(in.r_rect, r_prev);
        EXPECT_LT(in.c_rect, c_prev);
        r_prev = in.r_rect;
        c_prev = in.c_rect;
    }
}

TEST(Harvester, DesignSpacePicksFewestStages) {
    HarvesterConstraints k;
    k.v_t = 0.026;
    const auto d = design_space(0.05, 1.0, 20e6, k);
    EXPECT_GE(d.chosen_point.v_out, 1.0);
    EXPECT_LT(v_out(d.chosen.n_stages - 1, 0.05, 0.026), 1.0);
    EXPECT_EQ(d.table.size(), static_cast<std::size_t>(k.n_max - k.n_min + 1));
    EXPECT_NEAR(d.chosen_point.charge_time, 3.0 * d.chosen.n_stages * 0.026 / 10e-6 * 0.47e-6, 1e-15);
}

TEST(Harvester, BoostQReducesStageCount) {
    HarvesterConstraints k;
    k.q_values = {1.0, 3.0};
    const auto d = design_space(0.05, 1.0, 20e6, k);
    EXPECT_EQ(d.chosen.q_boost, 3.0);
    EXPECT_EQ(d.table.size(), 2u * 60u);
}

TEST(Harvester, InfeasibleReportsNearestMiss) {
    HarvesterConstraints k;
    k.n_max = 5;
    try {
        design_space(0.05, 1.0, 20e6, k);
        FAIL();
    } catch (const InfeasibleDesign& e) {
        EXPECT_NE(e.nearest_miss().find("max v_out"), std::string::npos);
        EXPECT_NE(e.nearest_miss().find("charge time"), std::string::npos);
    }
}
