#pragma once

#include "nric/coil_link.hpp"
#include "nric/netcore.hpp"

namespace nric {

// Operating power gain of a two-port driven through its own input, loaded by Gamma_L.
double pte_two_port(const TwoPort& s, Complex gamma_load);

struct PteMax {
    double value = 0.0;  // NaN when k_r < 1
    double k_r = 0.0;
    bool stable = true;  // false flags k_r < 1 (active or noisy data)
};

// Maximum PTE under simultaneous conjugate matching,
// K_r = (1 + |S11 S22 - S21^2|^2 - |S11|^2 - |S22|^2) / (2 |S21^2|).
PteMax pte_max(const TwoPort& s);

// Port-impedance correction for PTE = gamma |S21,link|^2. gamma = 1 whenever
// either port sits exactly at 50 ohm or both are equal to 50 ohm.
double gamma_correction(const PortPair& ports);
double pte_link(Complex s21_link, const PortPair& ports);

struct PteReport {
    double pte = 0.0;
    double pte_max = 0.0;
    double k_r = 0.0;
    double gamma = 1.0;
    double f0 = 0.0;
    bool stable = true;
};

// Report for a link S matrix at f0 terminated in its reference ports.
PteReport evaluate_link(const TwoPort& s_link, const PortPair& ports, double f0);

inline constexpr double kSarLimit1g = 1.6;  // W/kg, IEEE 1 g average

struct SarBudget {
    double sar_limit = kSarLimit1g;
    double p_tx_max = 0.0;  // W, transmit power at which the SAR limit is reached
    double pdl_max = 0.0;   // W
};

SarBudget sar_constrained_pdl(double p_tx_max, double pte, double sar_limit = kSarLimit1g);

}  // namespace nric
