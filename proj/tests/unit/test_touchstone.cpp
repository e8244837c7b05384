#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "nric/errors.hpp"
#include "nric/touchstone.hpp"
#include "support/oracles.hpp"

using namespace nric;

namespace {

int error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        read_touchstone(in);
    } catch (const IoError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST(Touchstone, WriteReadRoundTrip) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TouchstoneRecord rec;
    rec.reference_resistance = 50.0;
    for (int i = 0; i < 50; ++i) {
        rec.freqs.push_back(1e6 * (i + 1) + 0.123456789 * i);
        const Complex s21{u(rng), u(rng)};
        rec.rows.push_back(TwoPort::s({u(rng), u(rng)}, s21, s21, {u(rng), u(rng)}));
    }
    std::stringstream io;
    write_touchstone(io, rec);
    const auto back = read_touchstone(io);
    ASSERT_EQ(back.rows.size(), rec.rows.size());
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        EXPECT_NEAR(back.freqs[i], rec.freqs[i], 1e-12 * rec.freqs[i]);
        EXPECT_NEAR(std::abs(back.rows[i].m11 - rec.rows[i].m11), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(back.rows[i].m21 - rec.rows[i].m21), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(back.rows[i].m22 - rec.rows[i].m22), 0.0, 1e-12);
    }
}

TEST(Touchstone, MagnitudeAngleAndDecibelForms) {
    std::istringstream ma("! comment\n# MHz S MA R 50\n10 0.5 90 0.25 -45 0.25 -45 1 180\n20 0.5 0 0.1 0 0.1 0 0 0\n");
    const auto a = read_touchstone(ma);
    EXPECT_EQ(a.format, TouchstoneFormat::MA);
    EXPECT_DOUBLE_EQ(a.freqs[0], 10e6);
    EXPECT_NEAR(a.rows[0].m11.real(), 0.0, 1e-15);
    EXPECT_NEAR(a.rows[0].m11.imag(), 0.5, 1e-15);
    EXPECT_NEAR(a.rows[0].m21.real(), 0.25 * std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(a.rows[0].m22.real(), -1.0, 1e-15);

    std::istringstream db("# S DB R 75 KHZ\n1 -20 0 -6 90 -6 90 -20 0\n2 -20 0 -6 90 -6 90 -20 0\n");
    const auto b = read_touchstone(db);
    EXPECT_EQ(b.reference_resistance, 75.0);
    EXPECT_DOUBLE_EQ(b.freqs[1], 2e3);
    EXPECT_NEAR(std::abs(b.rows[0].m11), 0.1, 1e-15);
    EXPECT_NEAR(std::abs(b.rows[0].m21), std::pow(10.0, -6.0 / 20.0), 1e-15);
    EXPECT_NEAR(std::arg(b.rows[0].m21), oracle::kPi / 2, 1e-15);
}

TEST(Touchstone, DefaultsToGigahertzMagnitudeAngle) {
    std::istringstream in("#\n1 0.1 0 0.9 0 0.9 0 0.1 0\n2 0.1 0 0.9 0 0.9 0 0.1 0\n");
    const auto r = read_touchstone(in);
    EXPECT_EQ(r.format, TouchstoneFormat::MA);
    EXPECT_DOUBLE_EQ(r.freqs[0], 1e9);
    EXPECT_EQ(r.reference_resistance, 50.0);
}

TEST(Touchstone, MalformedFilesReportLines) {
    const std::string head = "# HZ S RI R 50\n";
    const std::string row1 = "1 0 0 0.5 0 0.5 0 0 0\n";
    EXPECT_EQ(error_line(head + row1 + "2 0 0 0.5 0 0.5 0 0\n"), 3);           // column count
    EXPECT_EQ(error_line(head + row1 + "2 0 0 0.5 x 0.5 0 0 0\n"), 3);         // bad number
    EXPECT_EQ(error_line(head + row1 + "1 0 0 0.5 0 0.5 0 0 0\n"), 3);         // not increasing
    EXPECT_EQ(error_line("# HZ Y RI R 50\n" + row1), 1);                       // Y parameters
    EXPECT_EQ(error_line("# HZ S RI R\n" + row1), 1);                          // missing resistance
    EXPECT_EQ(error_line("# HZ S RI R 50\n# HZ S RI R 50\n" + row1), 2);       // second option line
    EXPECT_EQ(error_line(row1 + head + "2 0 0 0.5 0 0.5 0 0 0\n"), 2);         // option line after data
    EXPECT_EQ(error_line(head + row1), 2);                                     // a single row
}

TEST(Touchstone, TableConversion) {
    TouchstoneRecord rec;
    rec.freqs = {1e6, 2e6};
    rec.rows = {TwoPort::s(0.1, 0.5, 0.5, 0.1), TwoPort::s(0.2, 0.4, 0.4, 0.2)};
    const NetworkTable t = to_table(rec);
    EXPECT_NEAR(t.at(1.5e6).m11.real(), 0.15, 1e-15);
    const auto back = to_record(t);
    EXPECT_EQ(back.freqs, rec.freqs);
}
