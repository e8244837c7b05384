#include <gtest/gtest.h>

#include <random>

#include "nric/coil_link.hpp"
#include "nric/errors.hpp"
#include "nric/link_eval.hpp"
#include "support/oracles.hpp"

using namespace nric;

TEST(LinkEval, PteMaxMatchesBilateralMatchOracle) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const CoilPair c{50e-9 + 2e-6 * u(rng), 50e-9 + 2e-6 * u(rng), 0.1 + 5 * u(rng), 0.1 + 5 * u(rng),
                         0.01 + 0.6 * u(rng)};
        const double f = 1e6 + 1e8 * u(rng);
        const double zp1 = 20 + 80 * u(rng), zp2 = 20 + 80 * u(rng);
        const auto best = pte_max(abcd_to_s(coil_abcd(c, f), zp1, zp2));
        ASSERT_TRUE(best.stable);
        const double ref = oracle::eta_max_from_z(oracle::coil_z(c.l1, c.l2, c.r1, c.r2, c.k, f));
        EXPECT_NEAR(best.value, ref, 1e-10 * std::max(ref, 1e-6));
    }
}

TEST(LinkEval, ReferencePairEfficiency) {
    const CoilPair c{400e-9, 400e-9, 0.5, 0.5, 0.1};
    const auto best = pte_max(abcd_to_s(coil_abcd(c, 20e6), 50, 50));
    EXPECT_NEAR(best.value, 0.81986, 5e-5);
    EXPECT_GT(best.k_r, 1.0);
}

TEST(LinkEval, PteMaxBoundsTransducerEfficiency) {
    const CoilPair c{300e-9, 500e-9, 0.7, 0.4, 0.2};
    const TwoPort s = abcd_to_s(coil_abcd(c, 15e6), 50, 50);
    const double best = pte_max(s).value;
    for (double re = -0.9; re <= 0.9; re += 0.1) {
        for (double im = -0.9; im <= 0.9; im += 0.1) {
            if (std::norm(Complex(re, im)) >= 0.99) continue;
            EXPECT_LE(pte_two_port(s, {re, im}), best + 1e-12);
        }
    }
}

TEST(LinkEval, MatchedPortsGiveS21Squared) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double mag = 0.01 + 0.98 * u(rng);
        const Complex s21 = std::polar(mag, 2 * oracle::kPi * u(rng));
        const TwoPort s = TwoPort::s({1e-13 * u(rng), 0.0}, s21, s21, {0.0, 1e-13 * u(rng)});
        EXPECT_NEAR(pte_max(s).value, std::norm(s21), 1e-12);
    }
}

TEST(LinkEval, ActiveDataIsFlaggedNotThrown) {
    const TwoPort s = TwoPort::s(0.9, 0.5, 0.5, 0.9);  // K_r < 1
    const auto best = pte_max(s);
    EXPECT_FALSE(best.stable);
    EXPECT_TRUE(std::isnan(best.value));
    EXPECT_THROW(pte_max(TwoPort::s(0.3, 0.0, 0.0, 0.2)), DegenerateNetwork);
}

TEST(LinkEval, GammaCorrectionBranches) {
    EXPECT_DOUBLE_EQ(gamma_correction({25, 100}), 4.0);
    EXPECT_DOUBLE_EQ(gamma_correction({100, 100}), 4.0);
    EXPECT_DOUBLE_EQ(gamma_correction({100, 25}), 4.0);
    EXPECT_DOUBLE_EQ(gamma_correction({25, 25}), 4.0);
    EXPECT_DOUBLE_EQ(gamma_correction({50, 50}), 1.0);
    EXPECT_DOUBLE_EQ(gamma_correction({50, 100}), 1.0);
    EXPECT_DOUBLE_EQ(pte_link({0.5, 0.0}, {50, 50}), 0.25);
}

TEST(LinkEval, SarBudget) {
    const auto a = sar_constrained_pdl(84.6e-3, 0.04);
    EXPECT_NEAR(a.pdl_max, 3.384e-3, 1e-15);
    EXPECT_EQ(a.sar_limit, 1.6);
    EXPECT_NEAR(sar_constrained_pdl(57e-3, 0.02).pdl_max, 1.14e-3, 1e-15);
    EXPECT_THROW(sar_constrained_pdl(1.0, 1.5), ValidationError);
}

TEST(LinkEval, ReportCombinesNumbers) {
    const TwoPort s = TwoPort::s(0.0, 0.6, 0.6, 0.0, 25, 100);
    const auto r = evaluate_link(s, {25, 100}, 20e6);
    EXPECT_DOUBLE_EQ(r.gamma, 4.0);
    EXPECT_NEAR(r.pte, 4.0 * 0.36, 1e-15);
    EXPECT_NEAR(r.pte_max, 0.36, 1e-12);
    EXPECT_EQ(r.f0, 20e6);
}
