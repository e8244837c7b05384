#pragma once

// N-stage subthreshold rectifier sizing: DC output, parallel-equivalent
// input R/C, and a (stages x boost Q) design-space sweep.

#include <string>
#include <vector>

#include "nric/constants.hpp"

namespace nric {

inline constexpr double kBodyThermalVoltage = 0.0267;  // V at 310 K
inline constexpr double kBoostInductance = 6.33e-6;    // H, off-chip
inline constexpr double kBoostCapacitance = 10e-12;    // F, on-chip MIM

// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

// V_out = 2 n v_t ln(I0(v_rx / v_t)).
double v_out(int n, double v_rx, double v_t = kBodyThermalVoltage);

struct RectifierInput {
    double r_rect = 0.0;  // ohm
    double c_rect = 0.0;  // F, negative for an inductive input
    bool capacitive = true;
};

// Parallel-equivalent R and C of the harvester input impedance at f.
RectifierInput rect_input(Complex z_in_eh, double f);

double boost_resonance(double l = kBoostInductance, double c = kBoostCapacitance);

struct HarvesterSpec {
    int n_stages = 1;
    double v_t = kBodyThermalVoltage;
    double q_boost = 1.0;
    double c_store = 0.47e-6;
    double f0 = 0.0;
    Complex z_in_eh{0.0, 0.0};

    void validate() const;
};

// Z_in,EH as a function of stage count. The default stacks stages in series:
// R = r_stage * n in parallel with C = c_stage / n.
struct StageScaling {
    double r_stage = 1e3;     // ohm, calibrated single-stage input resistance
    double c_stage = 2e-12;   // F, calibrated single-stage input capacitance

    Complex z_in(int n, double f) const;
};

struct HarvesterConstraints {
    int n_min = 1;
    int n_max = 60;
    std::vector<double> q_values{1.0};
    double max_charge_time = 1.0;  // s
    Complex tissue_z{50.0, 0.0};   // source impedance presented by the link
    double i_load_avg = 10e-6;     // A, average load current for r_out
    double c_store = 0.47e-6;      // F
    double v_t = kBodyThermalVoltage;
};

struct HarvesterPoint {
    int n = 0;
    double q = 0.0;
    double r_rect = 0.0;
    double c_rect = 0.0;
    double v_out = 0.0;
    double charge_time = 0.0;
    double match_residual = 0.0;  // |Z_in - conj(Z_tissue)| / |Z_tissue|
};

struct HarvesterDesign {
    HarvesterSpec chosen;
    HarvesterPoint chosen_point;
    std::vector<HarvesterPoint> table;  // n-major, q-minor
};

// Sweeps every (n, q). Picks the smallest n meeting target_v_out and
// max_charge_time, then the best match residual, then the smallest q.
// Throws InfeasibleDesign with the nearest misses when nothing qualifies.
HarvesterDesign design_space(double v_rx, double target_v_out, double f, const HarvesterConstraints& constraints,
                             const StageScaling& scaling = {});

}  // namespace nric
