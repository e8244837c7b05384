#include "nric/design.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nric/errors.hpp"
#include "nric/touchstone.hpp"

namespace nric {
namespace {

using json = nlohmann::json;

void allow_keys(const json& obj, const char* section, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) throw ValidationError(std::string("'") + section + "' must be an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ValidationError(std::string("unknown key '") + key + "' in '" + section + "'");
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string("key '") + key + "' has the wrong type");
    }
}

template <typename T>
T require(const json& obj, const char* key, const char* section) {
    if (!obj.contains(key)) throw ValidationError(std::string("missing '") + key + "' in '" + section + "'");
    return get_or<T>(obj, key, T{});
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

void parse_harvester(const json& h, DesignSpec& spec) {
    allow_keys(h, "harvester", {"v_rx_v", "target_v_out_v", "n_min", "n_max", "q_values", "max_charge_time_s",
                                "i_load_a", "c_store_f", "v_t_v", "r_stage_ohm", "c_stage_f", "tissue_z_ohm"});
    HarvesterRequest req;
    req.v_rx = require<double>(h, "v_rx_v", "harvester");
    req.target_v_out = require<double>(h, "target_v_out_v", "harvester");
    auto& c = req.constraints;
    c.n_min = get_or(h, "n_min", c.n_min);
    c.n_max = get_or(h, "n_max", c.n_max);
    c.q_values = get_or(h, "q_values", c.q_values);
    c.max_charge_time = get_or(h, "max_charge_time_s", c.max_charge_time);
    c.i_load_avg = get_or(h, "i_load_a", c.i_load_avg);
    c.c_store = get_or(h, "c_store_f", c.c_store);
    c.v_t = get_or(h, "v_t_v", c.v_t);
    req.scaling.r_stage = get_or(h, "r_stage_ohm", req.scaling.r_stage);
    req.scaling.c_stage = get_or(h, "c_stage_f", req.scaling.c_stage);
    if (h.contains("tissue_z_ohm")) {
        const auto z = get_or<std::vector<double>>(h, "tissue_z_ohm", {});
        if (z.size() != 2) throw ValidationError("'tissue_z_ohm' must be [re, im]");
        c.tissue_z = {z[0], z[1]};
    } else {
        c.tissue_z = {spec.ports.zp2, 0.0};
    }
    spec.harvester = req;
}

std::string describe(const SpiralGeometry& g) {
    std::ostringstream os;
    os << g.shape.name << " n=" << g.n;
    return os.str();
}

}  // namespace

void DesignSpec::validate() const {
    if (!(f0 > 0.0)) throw ValidationError("f0 must be positive");
    ports.validate();
    if (k && !(*k >= 0.0 && *k < 1.0)) throw ValidationError("k must lie in [0, 1)");
    if (!k && !(distance > 0.0)) throw ValidationError("k estimation needs a positive distance");
    if (mode == CoilMode::Asymmetric && !(l1_pinned && *l1_pinned > 0.0)) {
        throw ValidationError("asymmetric designs need a positive pinned L1");
    }
    if (!(r1_assumed >= 0.0) || !(r2_assumed >= 0.0)) throw ValidationError("assumed resistances must be >= 0");
    if (!(resistivity > 0.0)) throw ValidationError("resistivity must be positive");
    if (!(area_max_tx > 0.0) || !(area_max_rx > 0.0)) throw ValidationError("area caps must be positive");
    if (!(fab.min_trace_width > 0.0) || !(fab.min_spacing > 0.0) || !(fab.substrate_thickness > 0.0)) {
        throw ValidationError("fabrication constraints must be positive");
    }
    if (tissue_sections < 1) throw ValidationError("sections_per_layer must be >= 1");
    if (tissue == TissueMode::Layers) {
        if (tissue_layers.empty()) throw ValidationError("tissue layer list is empty");
        for (const auto& l : tissue_layers) l.validate();
    }
    if (tissue == TissueMode::Imported && !std::filesystem::exists(tissue_s2p)) {
        throw IoError("referenced file '" + tissue_s2p.string() + "' does not exist");
    }
    if (sar_p_tx_max && !(*sar_p_tx_max >= 0.0)) throw ValidationError("SAR transmit power must be >= 0");
    if (harvester) {
        if (!(harvester->v_rx >= 0.0) || !(harvester->target_v_out > 0.0)) {
            throw ValidationError("harvester voltages must be positive");
        }
    }
}

DesignSpec parse_design_spec(std::string_view text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("design spec is not valid JSON: ") + e.what());
    }
    allow_keys(doc, "design", {"f0_hz", "ports", "coupling", "coils", "tx", "rx", "fabrication", "tissue", "sar",
                               "harvester"});
    DesignSpec spec;
    spec.f0 = require<double>(doc, "f0_hz", "design");

    if (doc.contains("ports")) {
        const auto& p = doc["ports"];
        allow_keys(p, "ports", {"zp1_ohm", "zp2_ohm"});
        spec.ports.zp1 = get_or(p, "zp1_ohm", 50.0);
        spec.ports.zp2 = get_or(p, "zp2_ohm", 50.0);
    }

    if (!doc.contains("coupling")) throw ValidationError("missing 'coupling' in 'design'");
    {
        const auto& c = doc["coupling"];
        allow_keys(c, "coupling", {"k", "estimate", "distance_m"});
        if (get_or(c, "estimate", false)) {
            spec.k.reset();
            spec.distance = require<double>(c, "distance_m", "coupling");
        } else {
            spec.k = require<double>(c, "k", "coupling");
            spec.distance = get_or(c, "distance_m", spec.distance);
        }
    }

    if (doc.contains("coils")) {
        const auto& c = doc["coils"];
        allow_keys(c, "coils", {"mode", "l1_h", "r1_ohm", "r2_ohm", "resistivity_ohm_m", "trace_thickness_m"});
        const auto mode = get_or<std::string>(c, "mode", "symmetric");
        if (mode == "symmetric") spec.mode = CoilMode::Symmetric;
        else if (mode == "asymmetric") spec.mode = CoilMode::Asymmetric;
        else throw ValidationError("coils.mode must be 'symmetric' or 'asymmetric'");
        if (c.contains("l1_h")) spec.l1_pinned = get_or(c, "l1_h", 0.0);
        spec.r1_assumed = get_or(c, "r1_ohm", spec.r1_assumed);
        spec.r2_assumed = get_or(c, "r2_ohm", spec.r2_assumed);
        spec.resistivity = get_or(c, "resistivity_ohm_m", spec.resistivity);
        spec.grid.trace_thickness = get_or(c, "trace_thickness_m", spec.grid.trace_thickness);
    }

    for (const char* side : {"tx", "rx"}) {
        if (!doc.contains(side)) throw ValidationError(std::string("missing '") + side + "' in 'design'");
        const auto& s = doc[side];
        allow_keys(s, side, {"shape", "area_max_m2"});
        const auto shape = ShapeCoefficients::by_name(get_or<std::string>(s, "shape", "square"));
        const double area = require<double>(s, "area_max_m2", side);
        if (std::string(side) == "tx") {
            spec.tx_shape = shape;
            spec.area_max_tx = area;
        } else {
            spec.rx_shape = shape;
            spec.area_max_rx = area;
        }
    }

    if (doc.contains("fabrication")) {
        const auto& f = doc["fabrication"];
        allow_keys(f, "fabrication", {"min_trace_width_m", "min_spacing_m", "substrate_thickness_m", "grid_step_m",
                                      "r_step_m", "w_max_m", "n_max", "phi_min", "phi_max"});
        spec.fab.min_trace_width = get_or(f, "min_trace_width_m", spec.fab.min_trace_width);
        spec.fab.min_spacing = get_or(f, "min_spacing_m", spec.fab.min_spacing);
        spec.fab.substrate_thickness = get_or(f, "substrate_thickness_m", spec.fab.substrate_thickness);
        spec.grid.step = get_or(f, "grid_step_m", spec.grid.step);
        spec.grid.r_step = get_or(f, "r_step_m", spec.grid.r_step);
        spec.grid.w_max = get_or(f, "w_max_m", spec.grid.w_max);
        spec.grid.n_max = get_or(f, "n_max", spec.grid.n_max);
        spec.grid.phi_min = get_or(f, "phi_min", spec.grid.phi_min);
        spec.grid.phi_max = get_or(f, "phi_max", spec.grid.phi_max);
    }

    if (doc.contains("tissue")) {
        const auto& t = doc["tissue"];
        allow_keys(t, "tissue", {"model", "layers_file", "s2p_file", "sections_per_layer"});
        const auto model = get_or<std::string>(t, "model", "default");
        spec.tissue_sections = get_or(t, "sections_per_layer", spec.tissue_sections);
        if (model == "none") {
            spec.tissue = TissueMode::None;
        } else if (model == "default") {
            spec.tissue = TissueMode::Default;
        } else if (model == "layers") {
            spec.tissue = TissueMode::Layers;
            const auto path = resolve(base_dir, require<std::string>(t, "layers_file", "tissue"));
            std::ifstream in(path);
            if (!in) throw IoError("cannot open layer file '" + path.string() + "'");
            spec.tissue_layers = read_layers(in);
        } else if (model == "s2p") {
            spec.tissue = TissueMode::Imported;
            spec.tissue_s2p = resolve(base_dir, require<std::string>(t, "s2p_file", "tissue"));
        } else {
            throw ValidationError("tissue.model must be one of none, default, layers, s2p");
        }
    }

    if (doc.contains("sar")) {
        const auto& s = doc["sar"];
        allow_keys(s, "sar", {"p_tx_max_w", "limit_w_per_kg"});
        spec.sar_p_tx_max = require<double>(s, "p_tx_max_w", "sar");
        spec.sar_limit = get_or(s, "limit_w_per_kg", spec.sar_limit);
    }

    if (doc.contains("harvester")) parse_harvester(doc["harvester"], spec);

    spec.validate();
    return spec;
}

DesignSpec load_design_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open design spec '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_design_spec(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
}

DesignReport run_design(const DesignSpec& spec) {
    spec.validate();
    DesignReport rep;
    rep.f0 = spec.f0;
    rep.ports = spec.ports;

    auto synth = [&](double target, double area, const ShapeCoefficients& shape, const char* stage) {
        FabConstraints fab = spec.fab;
        fab.max_area = area;
        auto res = synthesize(target, fab, shape, spec.grid);
        if (res.candidates.empty()) throw InfeasibleDesign(stage, res.nearest_miss);
        return res;
    };

    double k = spec.k.value_or(0.1);
    rep.k_estimated = !spec.k.has_value();
    constexpr int kMaxKIterations = 12;
    for (int it = 1;; ++it) {
        rep.k_iterations = it;
        rep.l_opt = l_opt(spec.f0, spec.r1_assumed, spec.r2_assumed, spec.ports, k);
        if (spec.mode == CoilMode::Symmetric) {
            rep.l1_target = rep.l2_target = rep.l_opt;
        } else {
            rep.l1_target = *spec.l1_pinned;
            rep.l2_target = partner_inductance(rep.l_opt, rep.l1_target);
        }
        const auto tx = synth(rep.l1_target, spec.area_max_tx, spec.tx_shape, "coil synthesis (TX)");
        const auto rx = synth(rep.l2_target, spec.area_max_rx, spec.rx_shape, "coil synthesis (RX)");
        rep.tx_geometry = tx.candidates.front();
        rep.rx_geometry = rx.candidates.front();
        rep.tx_candidates = tx.candidates.size();
        rep.rx_candidates = rx.candidates.size();
        if (spec.k) break;
        const double k_new = estimate_k(rep.tx_geometry, rep.rx_geometry, spec.distance);
        if (!(k_new > 0.0)) {
            throw InfeasibleDesign("coupling estimate", "estimated k is zero for " + describe(rep.tx_geometry) +
                                                            " / " + describe(rep.rx_geometry));
        }
        const bool converged = std::abs(k_new - k) < 1e-4;
        k = k_new;
        if (converged || it >= kMaxKIterations) break;
    }
    rep.k_used = k;

    rep.bare.l1 = inductance(rep.tx_geometry);
    rep.bare.l2 = inductance(rep.rx_geometry);
    rep.bare.r1 = ac_resistance(rep.tx_geometry, spec.f0, spec.resistivity);
    rep.bare.r2 = ac_resistance(rep.rx_geometry, spec.f0, spec.resistivity);
    rep.bare.k = k;
    rep.f_opt_bare = f_opt(rep.bare, spec.ports);
    rep.s_max_bare = s_max(rep.bare, spec.ports);
    const TwoPort t_bare = coil_abcd(rep.bare, spec.f0);
    rep.s_bare = abcd_to_s(t_bare, spec.ports.zp1, spec.ports.zp2);
    rep.pte_max_bare = pte_max(rep.s_bare);

    switch (spec.tissue) {
        case TissueMode::None:
            rep.tissue_model = "none";
            rep.t_modified = t_bare;
            break;
        case TissueMode::Default: {
            rep.tissue_model = "default skin/fat/muscle";
            auto stack = default_stack(rep.rx_geometry.area);
            stack.sections_per_layer = spec.tissue_sections;
            rep.t_modified = modified_coil_abcd(t_bare, stack, spec.f0);
            break;
        }
        case TissueMode::Layers: {
            rep.tissue_model = "layer file";
            const TissueStack stack{spec.tissue_layers, spec.tissue_sections, rep.rx_geometry.area};
            rep.t_modified = modified_coil_abcd(t_bare, stack, spec.f0);
            break;
        }
        case TissueMode::Imported: {
            rep.tissue_model = "imported " + spec.tissue_s2p.filename().string();
            const auto table = to_table(read_touchstone(spec.tissue_s2p));
            rep.t_modified = s_to_abcd(table.at(spec.f0));
            break;
        }
    }
    rep.s_modified = abcd_to_s(rep.t_modified, spec.ports.zp1, spec.ports.zp2);
    rep.extracted = extract_params(rep.s_modified, spec.f0);

    rep.imn = synthesize_imn(rep.t_modified, spec.ports, spec.f0);
    if (rep.imn.already_matched) {
        rep.s_link = rep.s_modified;
    } else {
        if (rep.imn.solutions.empty()) throw InfeasibleDesign("IMN synthesis", rep.imn.note);
        rep.chosen = rep.imn.solutions.front();
        const auto link = assemble_link(rep.chosen.imn, rep.t_modified, spec.f0, spec.ports);
        rep.s_link = abcd_to_s(link.t_link, spec.ports.zp1, spec.ports.zp2);
    }
    rep.pte = evaluate_link(rep.s_link, spec.ports, spec.f0);

    if (spec.sar_p_tx_max) {
        rep.sar = sar_constrained_pdl(*spec.sar_p_tx_max, std::min(1.0, rep.pte.pte), spec.sar_limit);
    }
    if (spec.harvester) {
        rep.harvester = design_space(spec.harvester->v_rx, spec.harvester->target_v_out, spec.f0,
                                     spec.harvester->constraints, spec.harvester->scaling);
    }
    return rep;
}

std::vector<double> frequency_grid(double f_start, double f_stop, int points, SweepScale scale) {
    if (!(f_start > 0.0) || !(f_stop > f_start)) throw ValidationError("sweep: need 0 < f_start < f_stop");
    if (points < 2) throw ValidationError("sweep: need at least 2 points");
    std::vector<double> f(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double u = static_cast<double>(i) / (points - 1);
        f[static_cast<std::size_t>(i)] = scale == SweepScale::Log
                                             ? f_start * std::pow(f_stop / f_start, u)
                                             : f_start + u * (f_stop - f_start);
    }
    f.front() = f_start;
    f.back() = f_stop;
    return f;
}

std::vector<SweepRow> sweep(const NetworkSource& source, const PortPair& ports, double f_start, double f_stop,
                            int points, SweepScale scale) {
    ports.validate();
    const double gamma = gamma_correction(ports);
    std::vector<SweepRow> rows;
    for (double f : frequency_grid(f_start, f_stop, points, scale)) {
        const TwoPort s = to_s(source(f), ports.zp1, ports.zp2);
        SweepRow r;
        r.f = f;
        r.s11_db = to_db(std::abs(s.m11));
        r.s21_db = to_db(std::abs(s.m21));
        r.s22_db = to_db(std::abs(s.m22));
        r.pte_pct = 100.0 * gamma * std::norm(s.m21);
        r.pte_max_pct = 100.0 * pte_max(s).value;
        rows.push_back(r);
    }
    return rows;
}

NetworkSource analytic_source(const CoilPair& coils, std::optional<TissueStack> stack, std::optional<LSectionIMN> imn) {
    coils.validate();
    if (stack) stack->validate();
    if (imn) imn->validate();
    return [coils, stack, imn](double f) {
        TwoPort t = coil_abcd(coils, f);
        if (stack) t = modified_coil_abcd(t, *stack, f);
        if (imn) t = assemble_link(*imn, t, f, PortPair{}).t_link;
        return t;
    };
}

NetworkSource table_source(NetworkTable table) {
    return [table = std::move(table)](double f) { return table.at(f); };
}

}  // namespace nric
