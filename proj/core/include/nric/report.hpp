#pragma once

// Human-readable design reports and CSV tables. Output is locale-independent
// and byte-stable for identical inputs.

#include <ostream>
#include <string>
#include <vector>

#include "nric/design.hpp"

namespace nric {

// Plain-text report; every number carries a unit ("-" for dimensionless),
// followed by a key=value footer between "[footer]" and "[end]".
std::string render_report(const DesignReport& report);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::string render_sweep_text(const std::vector<SweepRow>& rows);

void write_geometry_csv(std::ostream& out, const std::vector<SpiralGeometry>& candidates, double f,
                        double resistivity = kCopperResistivity);

// One record per solution: topology case, four (kind, value) pairs, S11/S22/S21 in dB.
void write_imn_csv(std::ostream& out, const ImnSynthesis& synthesis);
std::string render_imn_text(const ImnSynthesis& synthesis);

void write_harvester_csv(std::ostream& out, const HarvesterDesign& design);
std::string render_harvester_text(const HarvesterDesign& design);

// Per-layer complex permittivity and effective conductivity at each frequency.
void write_tissue_csv(std::ostream& out, const std::vector<ColeColeLayer>& layers, const std::vector<double>& freqs);

}  // namespace nric
