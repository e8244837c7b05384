#pragma once

// Planar spiral coils: current-sheet inductance, layout synthesis under an
// area cap, skin-effect trace resistance and filament-based coupling.

#include <string>
#include <vector>

namespace nric {

inline constexpr double kCopperResistivity = 1.68e-8;  // ohm m
inline constexpr double kDefaultTraceThickness = 35e-6; // m
inline constexpr double kDefaultSubstrateThickness = 25e-6;

struct ShapeCoefficients {
    std::string name;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
    int seg = 0;  // polygon order; 0 marks a circle

    // cos(pi / seg), 1 for a circle.
    double cos_factor() const;

    static ShapeCoefficients square();
    static ShapeCoefficients hexagonal();
    static ShapeCoefficients octagonal();
    static ShapeCoefficients circular();
    // Coefficients for an arbitrary polygon order, linear in cos(pi/seg)
    // between the tabulated shapes (extrapolated from square/hexagon below 4).
    static ShapeCoefficients polygon(int seg);
    // "square", "hexagonal", "octagonal", "circular" or "polygon:<seg>".
    static ShapeCoefficients by_name(const std::string& name);
};

struct SpiralGeometry {
    ShapeCoefficients shape;
    int n = 1;          // turns
    double r = 0.0;     // initial radius, m
    double dr = 0.0;    // radius increment per turn, m
    double w = 0.0;     // trace width, m
    double t = kDefaultTraceThickness;
    // Derived by make().
    double d_avg = 0.0;
    double phi = 0.0;
    double area = 0.0;

    static SpiralGeometry make(const ShapeCoefficients& shape, int n, double r, double dr,
                               double w, double t = kDefaultTraceThickness);
    void validate() const;
};

double avg_diameter(const SpiralGeometry& g);
double coil_area(const SpiralGeometry& g);
double fill_ratio(const SpiralGeometry& g);

// Current-sheet inductance (mu_r = 1).
double inductance(const SpiralGeometry& g);

struct FabConstraints {
    double min_trace_width = 100e-6;
    double min_spacing = 100e-6;
    double max_area = 0.0;
    double substrate_thickness = kDefaultSubstrateThickness;

    void validate() const;
};

// Discrete search lattice. Spacing is capped at max_spacing_ratio * w, the
// regime where the current-sheet expression stays within a few percent.
struct SynthesisGrid {
    int n_min = 1;
    int n_max = 40;
    double step = 50e-6;       // w and spacing resolution
    double r_step = 100e-6;
    double w_max = 1e-3;
    double max_spacing_ratio = 3.0;
    double tolerance = 0.01;   // relative inductance band
    // Fill-ratio window where the closed-form inductance is trusted; outside it
    // independent closed forms disagree by more than 5%.
    double phi_min = 0.15;
    double phi_max = 0.9;
    double trace_thickness = kDefaultTraceThickness;
};

struct SynthesisResult {
    std::vector<SpiralGeometry> candidates;  // descending area
    std::string nearest_miss;                // set when candidates is empty
};

SynthesisResult synthesize(double l_target, const FabConstraints& fab,
                           const ShapeCoefficients& shape, const SynthesisGrid& grid = {});

double skin_depth(double f, double resistivity = kCopperResistivity);
double trace_length(const SpiralGeometry& g);
double ac_resistance(const SpiralGeometry& g, double f, double resistivity = kCopperResistivity);

// Mutual inductance of two coaxial, coplanar-aligned spirals by a Neumann
// sum over per-turn filament polygons.
double mutual_inductance(const SpiralGeometry& tx, const SpiralGeometry& rx, double distance);

// k = M / sqrt(L_tx L_rx), clamped to [0, 1).
double estimate_k(const SpiralGeometry& tx, const SpiralGeometry& rx, double distance);

}  // namespace nric
