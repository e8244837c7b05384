#pragma once

// Layered tissue channel: multi-pole Cole-Cole permittivity, the sigma*w^2
// loss law, and a sectioned ladder two-port that embeds the receive coil in
// the tissue stack. Measured or simulated data can replace the analytic
// ladder through NetworkTable.

#include <iosfwd>
#include <string>
#include <vector>

#include "nric/netcore.hpp"

namespace nric {

struct Dispersion {
    double delta_eps = 0.0;
    double tau = 0.0;    // s
    double alpha = 0.0;  // [0, 1)
};

struct ColeColeLayer {
    std::string name;
    double eps_inf = 1.0;
    std::vector<Dispersion> terms;
    double sigma_static = 0.0;  // S/m
    double thickness = 0.0;     // m

    void validate() const;
};

struct TissueStack {
    std::vector<ColeColeLayer> layers;
    int sections_per_layer = 10;
    double face_area = 0.0;  // m^2, effective field cross-section

    void validate() const;
    double total_thickness() const;
};

// Literature 4-pole parameter sets (Gabriel et al. parametric model).
ColeColeLayer skin_dry(double thickness);
ColeColeLayer fat_not_infiltrated(double thickness);
ColeColeLayer muscle(double thickness);
ColeColeLayer vacuum(double thickness);
// 2 mm skin / 2 mm fat / 10 mm muscle, 10 sections per layer.
TissueStack default_stack(double face_area);

// eps = eps_inf + sum d_eps / (1 + (j w tau)^(1 - alpha)) + sigma / (j w eps0), as eps' - j eps''.
Complex complex_permittivity(const ColeColeLayer& layer, double f);

// Total effective conductivity w eps0 eps'' (S/m), static plus dielectric loss.
double effective_conductivity(const ColeColeLayer& layer, double f);

// Tissue dissipation factor sigma w^2 (geometry constant left to the caller).
double loss_scaling(double sigma, double omega);

// Cascade of series j w mu0 dz / shunt j w eps0 eps(f) dz sections across
// the stack. Reciprocal by construction (every factor has det = 1).
TwoPort ladder_two_port(const TissueStack& stack, double f);

// T' = T_coil * ladder: the receive side embedded in tissue, transmit side in air.
TwoPort modified_coil_abcd(const TwoPort& t_coil, const TissueStack& stack, double f);

// Layer override records: one layer per non-comment line,
//   name eps_inf sigma_S_per_m thickness_m [delta_eps tau_s alpha]...
std::vector<ColeColeLayer> read_layers(std::istream& in);
void write_layers(std::ostream& out, const std::vector<ColeColeLayer>& layers);

// Frequency-indexed S-parameter table with linear (re, im) interpolation.
class NetworkTable {
public:
    // Throws ValidationError naming the offending row for a non-increasing
    // frequency axis or |S12 - S21| > reciprocity_tol * max(|S12|, |S21|).
    NetworkTable(std::vector<double> freqs, std::vector<TwoPort> rows, double reciprocity_tol = 1e-6);

    const std::vector<double>& frequencies() const { return freqs_; }
    const std::vector<TwoPort>& rows() const { return rows_; }
    double f_min() const { return freqs_.front(); }
    double f_max() const { return freqs_.back(); }

    // S matrix at f; exact row at tabulated points. Throws outside [f_min, f_max].
    TwoPort at(double f) const;

private:
    std::vector<double> freqs_;
    std::vector<TwoPort> rows_;
};

NetworkTable import_override(std::vector<double> freqs, std::vector<TwoPort> rows,
                             double reciprocity_tol = 1e-6);

}  // namespace nric
