// nric: batch design tool for inductive links.
// Exit codes: 0 success, 2 invalid input, 3 infeasible design, 4 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nric/design.hpp"
#include "nric/errors.hpp"
#include "nric/report.hpp"
#include "nric/touchstone.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

struct Output {
    std::string path;
    std::string format = "text";
    bool seedless = false;

    bool csv() const { return format == "csv"; }

    void emit(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw nric::IoError("cannot open '" + path + "' for writing");
        out << text;
        if (!out) throw nric::IoError("write to '" + path + "' failed");
    }
};

struct CoilArgs {
    double l1 = 400e-9, l2 = 400e-9, r1 = 0.5, r2 = 0.5, k = 0.1;
    double zp1 = 50.0, zp2 = 50.0;

    void add(CLI::App* app) {
        app->add_option("--l1", l1, "TX inductance [H]")->capture_default_str();
        app->add_option("--l2", l2, "RX inductance [H]")->capture_default_str();
        app->add_option("--r1", r1, "TX resistance [ohm]")->capture_default_str();
        app->add_option("--r2", r2, "RX resistance [ohm]")->capture_default_str();
        app->add_option("-k,--coupling", k, "coupling coefficient")->capture_default_str();
        app->add_option("--zp1", zp1, "port 1 reference impedance [ohm]")->capture_default_str();
        app->add_option("--zp2", zp2, "port 2 reference impedance [ohm]")->capture_default_str();
    }
    nric::CoilPair coils() const { return {l1, l2, r1, r2, k}; }
    nric::PortPair ports() const { return {zp1, zp2}; }
};

nric::SweepScale parse_scale(const std::string& s) {
    return s == "log" ? nric::SweepScale::Log : nric::SweepScale::Linear;
}

std::vector<nric::ColeColeLayer> layers_from(const std::string& path) {
    if (path.empty()) return nric::default_stack(0.0).layers;
    std::ifstream in(path);
    if (!in) throw nric::IoError("cannot open layer file '" + path + "'");
    return nric::read_layers(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nric: inductive link design, matching and analysis"};
    app.require_subcommand(1);
    Output out;
    app.add_option("--out", out.path, "write the result to a file instead of stdout");
    app.add_option("--format", out.format, "output format")->check(CLI::IsMember({"text", "csv"}));
    app.add_flag("--seedless", out.seedless, "assert the run uses no randomness (always true)");

    // design
    auto* design = app.add_subcommand("design", "run the full design flow from a JSON spec");
    std::string spec_path;
    design->add_option("spec", spec_path, "design spec file")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "frequency sweep of an analytic link, a designed link or an s2p file");
    CoilArgs sweep_coils;
    sweep_coils.add(sweep);
    std::string sweep_s2p, sweep_spec, sweep_scale = "linear";
    bool sweep_tissue = false;
    double f_start = 1e6, f_stop = 100e6;
    int points = 201;
    auto* s2p_opt = sweep->add_option("--s2p", sweep_s2p, "sweep an imported Touchstone file");
    sweep->add_option("--spec", sweep_spec, "sweep the matched link produced by a design spec")->excludes(s2p_opt);
    sweep->add_flag("--tissue", sweep_tissue, "embed the default tissue stack (analytic source)");
    sweep->add_option("--f-start", f_start, "start frequency [Hz]")->capture_default_str();
    sweep->add_option("--f-stop", f_stop, "stop frequency [Hz]")->capture_default_str();
    sweep->add_option("--points", points, "number of points")->capture_default_str();
    sweep->add_option("--scale", sweep_scale, "grid spacing")->check(CLI::IsMember({"linear", "log"}));

    // match
    auto* match = app.add_subcommand("match", "synthesize L-section matching networks");
    CoilArgs match_coils;
    match_coils.add(match);
    std::string match_s2p;
    double match_f0 = 20e6;
    match->add_option("--f0", match_f0, "design frequency [Hz]")->capture_default_str();
    match->add_option("--s2p", match_s2p, "match an imported network evaluated at f0");

    // coil synth
    auto* coil = app.add_subcommand("coil", "planar spiral coil tools");
    coil->require_subcommand(1);
    auto* synth = coil->add_subcommand("synth", "enumerate spiral geometries for a target inductance");
    double synth_l = 400e-9, synth_area = 18e-3 * 18e-3, synth_f = 20e6;
    std::string synth_shape = "square";
    nric::FabConstraints fab;
    nric::SynthesisGrid grid;
    int synth_limit = 20;
    synth->add_option("--l", synth_l, "target inductance [H]")->capture_default_str();
    synth->add_option("--area", synth_area, "maximum footprint [m^2]")->capture_default_str();
    synth->add_option("--shape", synth_shape, "square, hexagonal, octagonal, circular or polygon:N")
        ->capture_default_str();
    synth->add_option("--min-width", fab.min_trace_width, "minimum trace width [m]")->capture_default_str();
    synth->add_option("--min-spacing", fab.min_spacing, "minimum spacing [m]")->capture_default_str();
    synth->add_option("--phi-min", grid.phi_min, "lowest accepted fill ratio")->capture_default_str();
    synth->add_option("--phi-max", grid.phi_max, "highest accepted fill ratio")->capture_default_str();
    synth->add_option("--f", synth_f, "frequency for the AC resistance column [Hz]")->capture_default_str();
    synth->add_option("--limit", synth_limit, "maximum candidates printed (0 for all)")->capture_default_str();

    // tissue table
    auto* tissue = app.add_subcommand("tissue", "tissue dielectric tools");
    tissue->require_subcommand(1);
    auto* table = tissue->add_subcommand("table", "tabulate layer permittivity and conductivity");
    std::string layers_path, tissue_scale = "log";
    double t_start = 1e6, t_stop = 1e9;
    int t_points = 13;
    table->add_option("--layers", layers_path, "layer file (default: skin, fat, muscle)");
    table->add_option("--f-start", t_start, "start frequency [Hz]")->capture_default_str();
    table->add_option("--f-stop", t_stop, "stop frequency [Hz]")->capture_default_str();
    table->add_option("--points", t_points, "number of points")->capture_default_str();
    table->add_option("--scale", tissue_scale, "grid spacing")->check(CLI::IsMember({"linear", "log"}));

    // harvester explore
    auto* harvester = app.add_subcommand("harvester", "energy harvester tools");
    harvester->require_subcommand(1);
    auto* explore = harvester->add_subcommand("explore", "tabulate the rectifier design space");
    double h_vrx = 0.05, h_target = 1.0, h_f0 = 20e6, h_zre = 50.0, h_zim = 0.0;
    nric::HarvesterConstraints hc;
    nric::StageScaling hs;
    explore->add_option("--v-rx", h_vrx, "received amplitude [V]")->capture_default_str();
    explore->add_option("--target", h_target, "required DC output [V]")->capture_default_str();
    explore->add_option("--f0", h_f0, "operating frequency [Hz]")->capture_default_str();
    explore->add_option("--n-max", hc.n_max, "maximum stage count")->capture_default_str();
    explore->add_option("--q", hc.q_values, "boost quality factors to try");
    explore->add_option("--v-t", hc.v_t, "diode thermal voltage [V]")->capture_default_str();
    explore->add_option("--max-charge-time", hc.max_charge_time, "longest allowed storage charge time [s]")->capture_default_str();
    explore->add_option("--i-load", hc.i_load_avg, "average load current [A]")->capture_default_str();
    explore->add_option("--c-store", hc.c_store, "storage capacitance [F]")->capture_default_str();
    explore->add_option("--z-re", h_zre, "source resistance seen by the rectifier [ohm]")->capture_default_str();
    explore->add_option("--z-im", h_zim, "source reactance seen by the rectifier [ohm]")->capture_default_str();

    // s2p convert
    auto* s2p = app.add_subcommand("s2p", "Touchstone tools");
    s2p->require_subcommand(1);
    auto* convert = s2p->add_subcommand("convert", "normalize a Touchstone file to Hz / RI");
    std::string conv_in, conv_out;
    convert->add_option("input", conv_in, "input .s2p")->required();
    convert->add_option("output", conv_out, "output .s2p")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*design) {
            const auto report = nric::run_design(nric::load_design_spec(spec_path));
            if (!out.csv()) {
                out.emit(nric::render_report(report));
            } else {
                // CSV view of the footer block.
                const std::string text = nric::render_report(report);
                std::string csv = "key,value\n";
                const auto begin = text.find("[footer]\n");
                std::istringstream footer(text.substr(begin + 9));
                for (std::string line; std::getline(footer, line) && line != "[end]";) {
                    const auto eq = line.find('=');
                    csv += line.substr(0, eq) + "," + line.substr(eq + 1) + "\n";
                }
                out.emit(csv);
            }
        } else if (*sweep) {
            nric::NetworkSource source;
            nric::PortPair ports = sweep_coils.ports();
            if (!sweep_s2p.empty()) {
                const auto rec = nric::read_touchstone(sweep_s2p);
                source = nric::table_source(nric::to_table(rec));
                ports = {rec.reference_resistance, rec.reference_resistance};
            } else if (!sweep_spec.empty()) {
                const auto spec = nric::load_design_spec(sweep_spec);
                const auto rep = nric::run_design(spec);
                std::optional<nric::TissueStack> stack;
                if (spec.tissue == nric::TissueMode::Default) {
                    stack = nric::default_stack(rep.rx_geometry.area);
                    stack->sections_per_layer = spec.tissue_sections;
                } else if (spec.tissue == nric::TissueMode::Layers) {
                    stack = nric::TissueStack{spec.tissue_layers, spec.tissue_sections, rep.rx_geometry.area};
                } else if (spec.tissue == nric::TissueMode::Imported) {
                    throw nric::ValidationError("sweep --spec does not support imported tissue networks");
                }
                std::optional<nric::LSectionIMN> imn;
                if (!rep.imn.already_matched) imn = rep.chosen.imn;
                source = nric::analytic_source(rep.bare, stack, imn);
                ports = spec.ports;
            } else {
                std::optional<nric::TissueStack> stack;
                if (sweep_tissue) stack = nric::default_stack(18e-3 * 18e-3);
                source = nric::analytic_source(sweep_coils.coils(), stack);
            }
            const auto rows = nric::sweep(source, ports, f_start, f_stop, points, parse_scale(sweep_scale));
            if (out.csv()) {
                std::ostringstream os;
                nric::write_sweep_csv(os, rows);
                out.emit(os.str());
            } else {
                out.emit(nric::render_sweep_text(rows));
            }
        } else if (*match) {
            nric::TwoPort t;
            nric::PortPair ports = match_coils.ports();
            if (!match_s2p.empty()) {
                const auto rec = nric::read_touchstone(match_s2p);
                t = nric::s_to_abcd(nric::to_table(rec).at(match_f0));
                ports = {rec.reference_resistance, rec.reference_resistance};
            } else {
                t = nric::coil_abcd(match_coils.coils(), match_f0);
            }
            const auto syn = nric::synthesize_imn(t, ports, match_f0);
            if (!syn.already_matched && syn.solutions.empty()) throw nric::InfeasibleDesign("IMN synthesis", syn.note);
            if (out.csv()) {
                std::ostringstream os;
                nric::write_imn_csv(os, syn);
                out.emit(os.str());
            } else {
                out.emit(nric::render_imn_text(syn));
            }
        } else if (*synth) {
            fab.max_area = synth_area;
            auto res = nric::synthesize(synth_l, fab, nric::ShapeCoefficients::by_name(synth_shape), grid);
            if (res.candidates.empty()) throw nric::InfeasibleDesign("coil synthesis", res.nearest_miss);
            const std::size_t total = res.candidates.size();
            if (synth_limit > 0 && total > static_cast<std::size_t>(synth_limit)) {
                res.candidates.resize(static_cast<std::size_t>(synth_limit));
            }
            std::ostringstream os;
            nric::write_geometry_csv(os, res.candidates, synth_f);
            if (!out.csv()) os << "# " << res.candidates.size() << " of " << total << " candidates shown\n";
            out.emit(os.str());
        } else if (*table) {
            const auto layers = layers_from(layers_path);
            std::ostringstream os;
            nric::write_tissue_csv(os, layers, nric::frequency_grid(t_start, t_stop, t_points, parse_scale(tissue_scale)));
            out.emit(os.str());
        } else if (*explore) {
            if (hc.q_values.empty()) hc.q_values = {1.0};
            hc.tissue_z = {h_zre, h_zim};
            const auto d = nric::design_space(h_vrx, h_target, h_f0, hc, hs);
            std::ostringstream os;
            nric::write_harvester_csv(os, d);
            out.emit(out.csv() ? os.str() : nric::render_harvester_text(d) + "\n" + os.str());
        } else if (*convert) {
            nric::write_touchstone(conv_out, nric::read_touchstone(conv_in));
        }
    } catch (const nric::InfeasibleDesign& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const nric::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const nric::Error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
