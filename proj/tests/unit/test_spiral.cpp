#include <gtest/gtest.h>

#include <cmath>

#include "nric/errors.hpp"
#include "nric/spiral.hpp"
#include "support/oracles.hpp"

using namespace nric;

namespace {

// Continuous spiral: the trace centre runs from r to r + n dr, so the inner
// edge sits at r - w/2 and the outer edge at r + n dr + w/2.
double wheeler(const SpiralGeometry& g) {
    const double c = g.shape.cos_factor();
    const double d_out = 2.0 * (g.r + g.n * g.dr) * c + g.w;
    const double d_in = 2.0 * g.r * c - g.w;
    return oracle::wheeler_inductance(g.shape.seg, g.n, d_out, d_in);
}

FabConstraints fab_with_area(double area) {
    FabConstraints fab;
    fab.max_area = area;
    return fab;
}

}  // namespace

TEST(Spiral, DerivedQuantities) {
    const auto g = SpiralGeometry::make(ShapeCoefficients::square(), 3, 5e-3, 0.5e-3, 0.3e-3);
    const double c = std::cos(oracle::kPi / 4);
    EXPECT_NEAR(g.d_avg, (2 * 5e-3 + 3 * 0.5e-3) * c, 1e-15);
    const double side = 0.3e-3 + 2 * (5e-3 + 3 * 0.5e-3) * c;
    EXPECT_NEAR(g.area, side * side, 1e-15);
    EXPECT_NEAR(g.phi, side / g.d_avg - 1.0, 1e-12);
}

TEST(Spiral, CurrentSheetAgreesWithWheelerInsideWindow) {
    for (int n = 2; n <= 12; ++n) {
        for (const auto& shape : {ShapeCoefficients::square(), ShapeCoefficients::hexagonal(),
                                  ShapeCoefficients::octagonal()}) {
            const auto g = SpiralGeometry::make(shape, n, 4e-3, 0.6e-3, 0.4e-3);
            if (g.phi < SynthesisGrid{}.phi_min || g.phi > SynthesisGrid{}.phi_max) continue;
            EXPECT_NEAR(inductance(g) / wheeler(g), 1.0, 0.05) << shape.name << " n=" << n;
        }
    }
}

TEST(Spiral, ClosedFormsDivergeForHollowCoils) {
    // A thin ring: fill ratio far below the synthesis window.
    const auto g = SpiralGeometry::make(ShapeCoefficients::square(), 3, 10e-3, 0.2e-3, 0.1e-3);
    EXPECT_LT(g.phi, 0.05);
    EXPECT_GT(inductance(g) / wheeler(g), 1.1);
}

TEST(Spiral, SynthesizedCandidatesAgreeWithWheeler) {
    for (auto [l, area] : {std::pair{400.4e-9, 18e-3 * 18e-3}, std::pair{80e-9, 5e-3 * 5e-3}}) {
        const auto res = synthesize(l, fab_with_area(area), ShapeCoefficients::square());
        ASSERT_FALSE(res.candidates.empty());
        for (const auto& g : res.candidates) EXPECT_NEAR(inductance(g) / wheeler(g), 1.0, 0.05);
    }
}

TEST(Spiral, PolygonInterpolationHitsTabulatedShapes) {
    for (const auto& s : {ShapeCoefficients::square(), ShapeCoefficients::hexagonal(), ShapeCoefficients::octagonal()}) {
        const auto p = ShapeCoefficients::polygon(s.seg);
        EXPECT_NEAR(p.c1, s.c1, 1e-12);
        EXPECT_NEAR(p.c2, s.c2, 1e-12);
        EXPECT_NEAR(p.c4, s.c4, 1e-12);
    }
    const auto p12 = ShapeCoefficients::polygon(12);
    EXPECT_GT(p12.c1, ShapeCoefficients::circular().c1);
    EXPECT_LT(p12.c1, ShapeCoefficients::octagonal().c1);
    EXPECT_EQ(ShapeCoefficients::by_name("polygon:6").seg, 6);
    EXPECT_THROW(ShapeCoefficients::by_name("triangle"), ValidationError);
    EXPECT_THROW(ShapeCoefficients::polygon(2), ValidationError);
}

TEST(Spiral, SynthesisMeetsTargetAndCaps) {
    const auto res = synthesize(400.4e-9, fab_with_area(18e-3 * 18e-3), ShapeCoefficients::square());
    ASSERT_FALSE(res.candidates.empty());
    double prev_area = 1.0;
    for (const auto& g : res.candidates) {
        EXPECT_LE(std::abs(inductance(g) / 400.4e-9 - 1.0), 0.01);
        EXPECT_LE(g.area, 18e-3 * 18e-3 * (1 + 1e-12));
        EXPECT_GE(g.w, 100e-6 - 1e-12);
        EXPECT_GE(g.dr - g.w, 100e-6 - 1e-12);
        EXPECT_LE(g.area, prev_area + 1e-18);
        prev_area = g.area;
    }
}

TEST(Spiral, SynthesisIsDeterministic) {
    const auto a = synthesize(80e-9, fab_with_area(25e-6), ShapeCoefficients::square());
    const auto b = synthesize(80e-9, fab_with_area(25e-6), ShapeCoefficients::square());
    ASSERT_EQ(a.candidates.size(), b.candidates.size());
    for (std::size_t i = 0; i < a.candidates.size(); ++i) {
        EXPECT_EQ(a.candidates[i].n, b.candidates[i].n);
        EXPECT_EQ(a.candidates[i].r, b.candidates[i].r);
        EXPECT_EQ(a.candidates[i].w, b.candidates[i].w);
    }
}

TEST(Spiral, InfeasibleAreaReportsNearestMiss) {
    const auto res = synthesize(400e-9, fab_with_area(1e-8), ShapeCoefficients::square());
    EXPECT_TRUE(res.candidates.empty());
    EXPECT_FALSE(res.nearest_miss.empty());
    const auto big = synthesize(1e-3, fab_with_area(25e-6), ShapeCoefficients::square());
    EXPECT_TRUE(big.candidates.empty());
    EXPECT_NE(big.nearest_miss.find("closest L"), std::string::npos);
    SynthesisGrid narrow;
    narrow.phi_min = 0.89;
    narrow.phi_max = 0.9;
    const auto windowed = synthesize(80e-9, fab_with_area(25e-6), ShapeCoefficients::square(), narrow);
    EXPECT_TRUE(windowed.candidates.empty());
    EXPECT_NE(windowed.nearest_miss.find("fill ratio"), std::string::npos);
}

TEST(Spiral, SkinDepthAndResistance) {
    const double f = 20e6;
    const double delta = std::sqrt(kCopperResistivity / (oracle::kPi * f * oracle::kMu0));
    EXPECT_NEAR(skin_depth(f), delta, 1e-9 * delta);
    const auto g = SpiralGeometry::make(ShapeCoefficients::square(), 3, 5e-3, 0.5e-3, 0.3e-3);
    EXPECT_GT(ac_resistance(g, 20e6), ac_resistance(g, 1e6));
    // Thick-trace limit: t_eff tends to delta.
    const double dc_like = kCopperResistivity * trace_length(g) / (g.w * g.t);
    EXPECT_GT(ac_resistance(g, 20e6), dc_like);
}

TEST(Spiral, TraceLengthOfCircleTurns) {
    const auto g = SpiralGeometry::make(ShapeCoefficients::circular(), 2, 1e-3, 0.5e-3, 0.2e-3);
    const double ref = 2 * oracle::kPi * (1.25e-3 + 1.75e-3);
    EXPECT_NEAR(trace_length(g), ref, 1e-12);
}

TEST(Spiral, NeumannSumMatchesCoaxialLoops) {
    // Single-turn circles: the filament formula is exact.
    const auto a = SpiralGeometry::make(ShapeCoefficients::circular(), 1, 4e-3, 1e-3, 0.1e-3);
    const auto b = SpiralGeometry::make(ShapeCoefficients::circular(), 1, 2e-3, 1e-3, 0.1e-3);
    for (double d : {1e-3, 5e-3, 15e-3}) {
        const double ref = oracle::coaxial_loops(4.5e-3, 2.5e-3, d);
        EXPECT_NEAR(mutual_inductance(a, b, d) / ref, 1.0, 1e-3) << "d=" << d;
    }
}

TEST(Spiral, CouplingDecreasesWithDistance) {
    const auto g = SpiralGeometry::make(ShapeCoefficients::square(), 4, 4e-3, 0.5e-3, 0.3e-3);
    double prev = 1.0;
    for (double d : {1e-3, 3e-3, 10e-3, 30e-3}) {
        const double k = estimate_k(g, g, d);
        EXPECT_GT(k, 0.0);
        EXPECT_LT(k, prev);
        prev = k;
    }
    EXPECT_THROW(estimate_k(g, g, 0.0), ValidationError);
}

TEST(Spiral, GeometryValidation) {
    EXPECT_THROW(SpiralGeometry::make(ShapeCoefficients::square(), 0, 1e-3, 1e-3, 1e-4), ValidationError);
    EXPECT_THROW(SpiralGeometry::make(ShapeCoefficients::square(), 2, 1e-3, 1e-4, 2e-4), ValidationError);
}
