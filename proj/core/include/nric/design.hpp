#pragma once

// End-to-end link design: optimal inductance, coil synthesis, resistance
// estimate, tissue embedding, parameter re-extraction, matching network and
// efficiency/SAR/harvester budgets. Also frequency sweeps over analytic or
// imported networks.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nric/coil_link.hpp"
#include "nric/harvester.hpp"
#include "nric/imn.hpp"
#include "nric/link_eval.hpp"
#include "nric/spiral.hpp"
#include "nric/tissue.hpp"

namespace nric {

enum class CoilMode { Symmetric, Asymmetric };
enum class TissueMode { None, Default, Layers, Imported };

struct HarvesterRequest {
    double v_rx = 0.05;
    double target_v_out = 1.0;
    HarvesterConstraints constraints;
    StageScaling scaling;
};

struct DesignSpec {
    double f0 = 20e6;
    PortPair ports;
    std::optional<double> k;   // empty: estimate from the synthesized coils
    double distance = 15e-3;   // m, used when estimating k
    CoilMode mode = CoilMode::Symmetric;
    std::optional<double> l1_pinned;  // H, asymmetric designs
    double r1_assumed = 0.5;
    double r2_assumed = 0.5;
    double resistivity = kCopperResistivity;
    ShapeCoefficients tx_shape = ShapeCoefficients::square();
    ShapeCoefficients rx_shape = ShapeCoefficients::square();
    double area_max_tx = 0.0;
    double area_max_rx = 0.0;
    FabConstraints fab;  // max_area is taken per side from area_max_*
    SynthesisGrid grid;
    TissueMode tissue = TissueMode::Default;
    std::vector<ColeColeLayer> tissue_layers;  // TissueMode::Layers
    int tissue_sections = 10;
    std::filesystem::path tissue_s2p;          // TissueMode::Imported
    std::optional<double> sar_p_tx_max;        // W
    double sar_limit = kSarLimit1g;
    std::optional<HarvesterRequest> harvester;

    void validate() const;
};

// JSON design document; relative file references resolve against base_dir.
DesignSpec parse_design_spec(std::string_view json_text, const std::filesystem::path& base_dir = ".");
DesignSpec load_design_spec(const std::filesystem::path& path);

struct DesignReport {
    double f0 = 0.0;
    PortPair ports;
    double k_used = 0.0;
    bool k_estimated = false;
    int k_iterations = 0;
    double l_opt = 0.0;
    double l1_target = 0.0;
    double l2_target = 0.0;
    SpiralGeometry tx_geometry;
    SpiralGeometry rx_geometry;
    std::size_t tx_candidates = 0;
    std::size_t rx_candidates = 0;
    CoilPair bare;  // geometry inductance, AC resistance, k
    double f_opt_bare = 0.0;
    double s_max_bare = 0.0;
    TwoPort s_bare;
    PteMax pte_max_bare;
    std::string tissue_model;
    TwoPort t_modified;  // ABCD, the network handed to the matching stage
    TwoPort s_modified;
    Extraction extracted;  // from t_modified
    ImnSynthesis imn;
    ImnSolution chosen;
    TwoPort s_link;
    PteReport pte;
    std::optional<SarBudget> sar;
    std::optional<HarvesterDesign> harvester;
};

// Throws InfeasibleDesign naming the failing stage.
DesignReport run_design(const DesignSpec& spec);

enum class SweepScale { Linear, Log };

struct SweepRow {
    double f = 0.0;
    double s11_db = 0.0;
    double s21_db = 0.0;
    double s22_db = 0.0;
    double pte_pct = 0.0;
    double pte_max_pct = 0.0;
};

// Returns the network at f in any representation.
using NetworkSource = std::function<TwoPort(double f)>;

std::vector<double> frequency_grid(double f_start, double f_stop, int points, SweepScale scale);

std::vector<SweepRow> sweep(const NetworkSource& source, const PortPair& ports, double f_start, double f_stop,
                            int points, SweepScale scale);

// Bare coils, optionally tissue-embedded, optionally with a fixed IMN.
NetworkSource analytic_source(const CoilPair& coils, std::optional<TissueStack> stack = std::nullopt,
                              std::optional<LSectionIMN> imn = std::nullopt);
NetworkSource table_source(NetworkTable table);

}  // namespace nric
