#pragma once

// Electrical model of a two-coil inductive link: the coupled-coil Z matrix,
// its closed-form |S21|, the frequency of peak transmission, the inductance
// that places that peak at a target frequency, and extraction of (L, R, k)
// back out of measured or simulated S-parameters.

#include <string>

#include "nric/netcore.hpp"

namespace nric {

struct CoilPair {
    double l1 = 0.0;  // H
    double l2 = 0.0;  // H
    double r1 = 0.0;  // ohm
    double r2 = 0.0;  // ohm
    double k = 0.0;

    double mutual() const;
    // Throws ValidationError on l <= 0, r < 0 or k outside [0, 1).
    void validate() const;
};

struct PortPair {
    double zp1 = 50.0;
    double zp2 = 50.0;

    void validate() const;
};

// t1..t4 composites of the closed-form transmission magnitude.
struct LinkAuxiliaries {
    double t1 = 0.0;  // 2 M sqrt(zp1 zp2)
    double t2 = 0.0;  // (R1 + zp1)(R2 + zp2)
    double t3 = 0.0;  // L1 L2 - M^2
    double t4 = 0.0;  // L1 (R2 + zp2) + L2 (R1 + zp1)
};

LinkAuxiliaries auxiliaries(const CoilPair& coils, const PortPair& ports);

TwoPort coil_z(const CoilPair& coils, double f);

// ABCD form of coil_z. Requires k > 0 (no transmission otherwise).
TwoPort coil_abcd(const CoilPair& coils, double f);

double s21_mag(const CoilPair& coils, const PortPair& ports, double f);

// Frequency of peak |S21| and the peak itself.
double f_opt(const CoilPair& coils, const PortPair& ports);
double s_max(const CoilPair& coils, const PortPair& ports);

// Geometric-mean inductance sqrt(L1 L2) that puts f_opt at f_target.
double l_opt(double f_target, double r1, double r2, const PortPair& ports, double k);

// Asymmetric split: given the chosen TX inductance, the RX inductance keeping sqrt(L1 L2) = l_opt.
// Series capacitor that resonates inductance l at f (series-series compensation).
double ss_capacitor(double l, double f);

double partner_inductance(double l_opt_h, double l1_chosen);

struct Extraction {
    CoilPair coils;    // raw numbers, even when not physical
    bool valid = true;
    std::string issue; // empty when valid
};

// Recovers (L1, L2, R1, R2, k) from a two-port S matrix at frequency f.
// S12 and S21 must agree to 1e-6 relative; they are averaged before use.
Extraction extract_params(const TwoPort& s, double f);

}  // namespace nric
