#pragma once

// L-section impedance matching on both ports of a link.
//
// Each side is one series and one shunt element; which of the two sits next
// to the external port gives four topology cases, and the L/C choice for the
// four elements gives 16 variants per case (64 in total):
//
//   case 1: TX shunt at port,  RX shunt at port
//   case 2: TX shunt at port,  RX series at port
//   case 3: TX series at port, RX shunt at port
//   case 4: TX series at port, RX series at port
//
// Synthesis solves the simultaneous conjugate match of the terminated core
// network, which is the same condition as S11,link = S22,link = 0 at real ports.

#include <string>
#include <vector>

#include "nric/coil_link.hpp"
#include "nric/netcore.hpp"

namespace nric {

enum class ElementKind { SeriesInductor, SeriesCapacitor, ShuntInductor, ShuntCapacitor };

std::string_view to_string(ElementKind kind);

struct Element {
    ElementKind kind = ElementKind::SeriesCapacitor;
    double value = 0.0;  // H or F

    bool is_series() const;
    bool is_capacitor() const;
    // Series: impedance. Shunt: admittance.
    Complex immittance(double f) const;
    TwoPort abcd(double f) const;
};

struct LSectionIMN {
    int topology_case = 1;
    Element tx_series;
    Element tx_shunt;
    Element rx_series;
    Element rx_shunt;

    bool tx_shunt_at_port() const { return topology_case == 1 || topology_case == 2; }
    bool rx_shunt_at_port() const { return topology_case == 1 || topology_case == 3; }
    int capacitor_count() const;
    void validate() const;
};

struct LinkNetwork {
    TwoPort t_link;  // ABCD
    double f0 = 0.0;
    PortPair ports;
};

// IMN_TX * t_coil * IMN_RX.
LinkNetwork assemble_link(const LSectionIMN& imn, const TwoPort& t_coil, double f, const PortPair& ports);

struct MatchReport {
    double s11_db = 0.0;
    double s22_db = 0.0;
    double s21_db = 0.0;
};

MatchReport verify_match(const LinkNetwork& link);

struct ImnSolution {
    LSectionIMN imn;
    MatchReport match;
    double s21_mag = 0.0;
    double reactance_sum = 0.0;  // sum of element |X| at f0, ohm
};

struct ImnSynthesis {
    std::vector<ImnSolution> solutions;  // ranked
    bool already_matched = false;
    bool matchable = true;
    std::string note;
    Complex z_source{0.0, 0.0};  // impedance the core must see at port 1
    Complex z_load{0.0, 0.0};    // impedance the core must see at port 2
    int combinations_tried = 0;
};

inline constexpr double kMatchThresholdDb = -40.0;

// Enumerates all 64 variants; keeps positive-valued solutions that verify
// below kMatchThresholdDb. Ranking: more capacitors first, then larger
// |S21,link|, then smaller total reactance.
ImnSynthesis synthesize_imn(const TwoPort& t_coil, const PortPair& ports, double f0);

}  // namespace nric
