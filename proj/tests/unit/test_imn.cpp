#include <gtest/gtest.h>

#include <random>

#include "nric/coil_link.hpp"
#include "nric/errors.hpp"
#include "nric/imn.hpp"
#include "nric/link_eval.hpp"
#include "support/oracles.hpp"

using namespace nric;

namespace {

oracle::Branch branch(const Element& e, double f) { return {e.is_series(), e.immittance(f)}; }

// Impedance seen at port 1 with port 2 terminated, walking the link as plain
// series/shunt branches. The coils become their T equivalent.
Complex port1_impedance(const LSectionIMN& imn, const CoilPair& c, double f, double zp2) {
    const auto z = oracle::coil_z(c.l1, c.l2, c.r1, c.r2, c.k, f);
    std::vector<oracle::Branch> chain;
    // RX side, from the load outward.
    if (imn.rx_shunt_at_port()) {
        chain.push_back(branch(imn.rx_shunt, f));
        chain.push_back(branch(imn.rx_series, f));
    } else {
        chain.push_back(branch(imn.rx_series, f));
        chain.push_back(branch(imn.rx_shunt, f));
    }
    chain.push_back({true, z[1][1] - z[0][1]});
    chain.push_back({false, 1.0 / z[0][1]});
    chain.push_back({true, z[0][0] - z[0][1]});
    if (imn.tx_shunt_at_port()) {
        chain.push_back(branch(imn.tx_series, f));
        chain.push_back(branch(imn.tx_shunt, f));
    } else {
        chain.push_back(branch(imn.tx_shunt, f));
        chain.push_back(branch(imn.tx_series, f));
    }
    return oracle::impedance_through(chain, zp2);
}

const CoilPair kPair{400e-9, 400e-9, 0.5, 0.5, 0.1};

}  // namespace

TEST(Imn, ReferenceCapacitiveSolution) {
    const PortPair ports{50, 50};
    const auto syn = synthesize_imn(coil_abcd(kPair, 20e6), ports, 20e6);
    ASSERT_TRUE(syn.matchable);
    EXPECT_EQ(syn.combinations_tried, 64);
    const ImnSolution* hit = nullptr;
    for (const auto& s : syn.solutions) {
        if (s.imn.topology_case == 4 && s.imn.capacitor_count() == 4) hit = &s;
    }
    ASSERT_NE(hit, nullptr);
    EXPECT_NEAR(hit->imn.tx_series.value, 52.7e-12, 0.02 * 52.7e-12);
    EXPECT_NEAR(hit->imn.tx_shunt.value, 109.1e-12, 0.02 * 109.1e-12);
    EXPECT_NEAR(hit->imn.rx_series.value, 52.7e-12, 0.02 * 52.7e-12);
    EXPECT_NEAR(hit->imn.rx_shunt.value, 109.1e-12, 0.02 * 109.1e-12);
    const double best = pte_max(abcd_to_s(coil_abcd(kPair, 20e6), 50, 50)).value;
    EXPECT_NEAR(hit->s21_mag * hit->s21_mag / best, 1.0, 1e-3);
}

TEST(Imn, EverySolutionMatchesByImpedanceWalk) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
        const CoilPair c{100e-9 + 1e-6 * u(rng), 100e-9 + 1e-6 * u(rng), 0.2 + 2 * u(rng), 0.2 + 2 * u(rng),
                         0.05 + 0.4 * u(rng)};
        const double f = 5e6 + 50e6 * u(rng);
        const PortPair ports{50, 50};
        const auto syn = synthesize_imn(coil_abcd(c, f), ports, f);
        for (const auto& s : syn.solutions) {
            const Complex zin = port1_impedance(s.imn, c, f, ports.zp2);
            EXPECT_LT(std::abs(zin - 50.0) / 50.0, 1e-6) << "case " << s.imn.topology_case;
            EXPECT_LE(s.match.s11_db, kMatchThresholdDb);
            EXPECT_LE(s.match.s22_db, kMatchThresholdDb);
            ++checked;
        }
    }
    EXPECT_GT(checked, 40);
}

TEST(Imn, LinkDeterminantIsOne) {
    const auto syn = synthesize_imn(coil_abcd(kPair, 20e6), {50, 50}, 20e6);
    for (const auto& s : syn.solutions) {
        const auto link = assemble_link(s.imn, coil_abcd(kPair, 20e6), 20e6, {50, 50});
        EXPECT_NEAR(std::abs(link.t_link.determinant() - 1.0), 0.0, 1e-9);
    }
}

TEST(Imn, UnequalPortsMatch) {
    const auto syn = synthesize_imn(coil_abcd(kPair, 20e6), {25, 100}, 20e6);
    ASSERT_FALSE(syn.solutions.empty());
    for (const auto& s : syn.solutions) EXPECT_LE(s.match.s11_db, kMatchThresholdDb);
}

TEST(Imn, RankingIsDeterministicAndCapacitorFirst) {
    const auto a = synthesize_imn(coil_abcd(kPair, 20e6), {50, 50}, 20e6);
    const auto b = synthesize_imn(coil_abcd(kPair, 20e6), {50, 50}, 20e6);
    ASSERT_EQ(a.solutions.size(), b.solutions.size());
    for (std::size_t i = 0; i < a.solutions.size(); ++i) {
        EXPECT_EQ(a.solutions[i].imn.topology_case, b.solutions[i].imn.topology_case);
        EXPECT_EQ(a.solutions[i].imn.tx_series.value, b.solutions[i].imn.tx_series.value);
        if (i > 0) {
            EXPECT_GE(a.solutions[i - 1].imn.capacitor_count(), a.solutions[i].imn.capacitor_count());
        }
    }
}

TEST(Imn, AlreadyMatchedNeedsNoNetwork) {
    const auto syn = synthesize_imn(TwoPort::identity(), {50, 50}, 20e6);
    EXPECT_TRUE(syn.already_matched);
    EXPECT_TRUE(syn.solutions.empty());
}

TEST(Imn, ActiveCoreIsUnmatchable) {
    const auto syn = synthesize_imn(series_impedance({-80.0, 20.0}), {50, 50}, 20e6);
    EXPECT_FALSE(syn.matchable);
    EXPECT_TRUE(syn.solutions.empty());
    EXPECT_FALSE(syn.note.empty());
}

TEST(Imn, ElementImmittances) {
    const double f = 20e6, w = 2 * oracle::kPi * f;
    EXPECT_NEAR((Element{ElementKind::SeriesCapacitor, 1e-12}).immittance(f).imag(), -1.0 / (w * 1e-12), 1e-6);
    EXPECT_NEAR((Element{ElementKind::ShuntInductor, 1e-6}).immittance(f).imag(), -1.0 / (w * 1e-6), 1e-15);
    EXPECT_NEAR((Element{ElementKind::SeriesInductor, 1e-6}).immittance(f).imag(), w * 1e-6, 1e-9);
    LSectionIMN bad;
    bad.topology_case = 5;
    EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Imn, SeriesCompensationResonatesAtTwentyMegahertz) {
    const double c = ss_capacitor(400e-9, 20e6);
    EXPECT_NEAR(c, 158.3e-12, 0.005 * 158.3e-12);
    auto compensated = [c](double f) {
        const TwoPort cs = Element{ElementKind::SeriesCapacitor, c}.abcd(f);
        return cascade({cs, coil_abcd(kPair, f), cs});
    };
    // Scenario-1 resonance: input reactance vanishes at 20 MHz and changes sign across it.
    // (|S21| itself peaks higher because the loop Q is near 1 and wM grows with f.)
    EXPECT_NEAR(input_impedance(compensated(20e6), 50.0).imag(), 0.0, 1e-9);
    EXPECT_LT(input_impedance(compensated(19e6), 50.0).imag(), 0.0);
    EXPECT_GT(input_impedance(compensated(21e6), 50.0).imag(), 0.0);
    // Adding an L-section after compensation reaches the same efficiency as the direct L-section.
    const auto direct = synthesize_imn(coil_abcd(kPair, 20e6), {50, 50}, 20e6);
    const auto via_ss = synthesize_imn(compensated(20e6), {50, 50}, 20e6);
    ASSERT_FALSE(direct.solutions.empty());
    ASSERT_FALSE(via_ss.solutions.empty());
    const double a = direct.solutions.front().s21_mag, b = via_ss.solutions.front().s21_mag;
    EXPECT_NEAR(a * a / (b * b), 1.0, 1e-3);
}

TEST(Imn, EverySolutionReachesPteMax) {
    const double best = pte_max(abcd_to_s(coil_abcd(kPair, 20e6), 50, 50)).value;
    for (const auto& s : synthesize_imn(coil_abcd(kPair, 20e6), {50, 50}, 20e6).solutions) {
        EXPECT_NEAR(s.s21_mag * s.s21_mag / best, 1.0, 1e-3);
        for (const Element& e : {s.imn.tx_series, s.imn.tx_shunt, s.imn.rx_series, s.imn.rx_shunt}) {
            EXPECT_GT(e.value, 0.0);
        }
    }
}
