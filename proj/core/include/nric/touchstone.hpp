#pragma once

// Touchstone v1 two-port (.s2p) reader and writer.
//
// Option line: "# <HZ|KHZ|MHZ|GHZ> S <RI|MA|DB> R <ohms>". Data rows hold
// nine numbers: f S11 S21 S12 S22 (pairs per the format). Comments start
// with '!'. Files are written as RI with frequency in Hz and 17 significant
// digits so a read of a written file is exact.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "nric/netcore.hpp"
#include "nric/tissue.hpp"

namespace nric {

enum class TouchstoneFormat { RI, MA, DB };

std::string_view to_string(TouchstoneFormat fmt);

struct TouchstoneRecord {
    std::vector<double> freqs;  // Hz, strictly increasing
    std::vector<TwoPort> rows;  // S, referenced to reference_resistance
    TouchstoneFormat format = TouchstoneFormat::RI;
    double reference_resistance = 50.0;
};

// Throws IoError carrying the 1-based line number of the first problem.
TouchstoneRecord read_touchstone(std::istream& in);
TouchstoneRecord read_touchstone(const std::filesystem::path& path);

void write_touchstone(std::ostream& out, const TouchstoneRecord& record);
void write_touchstone(const std::filesystem::path& path, const TouchstoneRecord& record);

NetworkTable to_table(const TouchstoneRecord& record, double reciprocity_tol = 1e-6);
TouchstoneRecord to_record(const NetworkTable& table);

}  // namespace nric
