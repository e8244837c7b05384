#include "nric/report.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include <fmt/format.h>

namespace nric {
namespace {

std::string num(double v) { return fmt::format("{:.6g}", v); }

std::string cnum(Complex z) {
    return fmt::format("{:.6g}{}j{:.6g}", z.real(), z.imag() < 0 ? "-" : "+", std::abs(z.imag()));
}

std::string element_text(const Element& e, double f) {
    const char* unit = e.is_capacitor() ? "F" : "H";
    if (e.is_series()) {
        return fmt::format("{} {} {} (X = {} ohm)", to_string(e.kind), num(e.value), unit, num(e.immittance(f).imag()));
    }
    return fmt::format("{} {} {} (B = {} S)", to_string(e.kind), num(e.value), unit, num(e.immittance(f).imag()));
}

class Writer {
public:
    void section(std::string_view title) { body_ += fmt::format("\n== {} ==\n", title); }
    void line(std::string_view label, const std::string& value, std::string_view unit) {
        body_ += fmt::format("{:<28} {} {}\n", label, value, unit);
    }
    void text(std::string_view label, std::string_view value) { body_ += fmt::format("{:<28} {}\n", label, value); }
    void key(std::string k, std::string v) { footer_.emplace_back(std::move(k), std::move(v)); }
    std::string str() const {
        std::string out = body_;
        out += "\n[footer]\n";
        for (const auto& [k, v] : footer_) out += k + "=" + v + "\n";
        out += "[end]\n";
        return out;
    }

private:
    std::string body_;
    std::vector<std::pair<std::string, std::string>> footer_;
};

void geometry_block(Writer& w, std::string_view side, const SpiralGeometry& g, double l, double r, std::size_t count) {
    w.text(fmt::format("{} shape", side), g.shape.name);
    w.line(fmt::format("{} turns", side), std::to_string(g.n), "-");
    w.line(fmt::format("{} inner radius", side), num(g.r), "m");
    w.line(fmt::format("{} turn pitch", side), num(g.dr), "m");
    w.line(fmt::format("{} trace width", side), num(g.w), "m");
    w.line(fmt::format("{} trace thickness", side), num(g.t), "m");
    w.line(fmt::format("{} footprint", side), num(g.area), "m^2");
    w.line(fmt::format("{} fill ratio", side), num(g.phi), "-");
    w.line(fmt::format("{} inductance", side), num(l), "H");
    w.line(fmt::format("{} AC resistance", side), num(r), "ohm");
    w.line(fmt::format("{} candidates", side), std::to_string(count), "-");
}

}  // namespace

std::string render_report(const DesignReport& rep) {
    Writer w;
    w.section("operating point");
    w.line("f0", num(rep.f0), "Hz");
    w.line("zp1", num(rep.ports.zp1), "ohm");
    w.line("zp2", num(rep.ports.zp2), "ohm");
    w.line("k", num(rep.k_used), "-");
    w.text("k source", rep.k_estimated ? fmt::format("estimated ({} iterations)", rep.k_iterations) : "given");
    w.key("f0_hz", num(rep.f0));
    w.key("k", num(rep.k_used));

    w.section("inductance targets");
    w.line("L_opt", num(rep.l_opt), "H");
    w.line("L1 target", num(rep.l1_target), "H");
    w.line("L2 target", num(rep.l2_target), "H");
    w.key("l_opt_h", num(rep.l_opt));

    w.section("coil geometry");
    geometry_block(w, "TX", rep.tx_geometry, rep.bare.l1, rep.bare.r1, rep.tx_candidates);
    geometry_block(w, "RX", rep.rx_geometry, rep.bare.l2, rep.bare.r2, rep.rx_candidates);
    w.key("l1_h", num(rep.bare.l1));
    w.key("l2_h", num(rep.bare.l2));
    w.key("r1_ohm", num(rep.bare.r1));
    w.key("r2_ohm", num(rep.bare.r2));

    w.section("bare link");
    w.line("mutual inductance", num(rep.bare.mutual()), "H");
    w.line("f_opt", num(rep.f_opt_bare), "Hz");
    w.line("|S21| at f_opt", num(rep.s_max_bare), "-");
    w.line("S11 at f0", cnum(rep.s_bare.m11), "-");
    w.line("S21 at f0", cnum(rep.s_bare.m21), "-");
    w.line("S22 at f0", cnum(rep.s_bare.m22), "-");
    w.line("PTE_max at f0", num(rep.pte_max_bare.value), "-");

    w.section("tissue-modified network");
    w.text("tissue model", rep.tissue_model);
    w.line("A", cnum(rep.t_modified.m11), "-");
    w.line("B", cnum(rep.t_modified.m12), "ohm");
    w.line("C", cnum(rep.t_modified.m21), "S");
    w.line("D", cnum(rep.t_modified.m22), "-");
    w.line("S11", cnum(rep.s_modified.m11), "-");
    w.line("S21", cnum(rep.s_modified.m21), "-");
    w.line("S22", cnum(rep.s_modified.m22), "-");

    w.section("re-extracted parameters");
    w.line("L1", num(rep.extracted.coils.l1), "H");
    w.line("L2", num(rep.extracted.coils.l2), "H");
    w.line("R1", num(rep.extracted.coils.r1), "ohm");
    w.line("R2", num(rep.extracted.coils.r2), "ohm");
    w.line("k", num(rep.extracted.coils.k), "-");
    w.text("physical", rep.extracted.valid ? "yes" : "no: " + rep.extracted.issue);
    w.key("extracted_l1_h", num(rep.extracted.coils.l1));
    w.key("extracted_l2_h", num(rep.extracted.coils.l2));
    w.key("extracted_r1_ohm", num(rep.extracted.coils.r1));
    w.key("extracted_r2_ohm", num(rep.extracted.coils.r2));
    w.key("extracted_k", num(rep.extracted.coils.k));

    w.section("matching network");
    w.line("source impedance", cnum(rep.imn.z_source), "ohm");
    w.line("load impedance", cnum(rep.imn.z_load), "ohm");
    w.line("combinations tried", std::to_string(rep.imn.combinations_tried), "-");
    w.line("matching solutions", std::to_string(rep.imn.solutions.size()), "-");
    if (rep.imn.already_matched) {
        w.text("status", "already matched, no network needed");
        w.key("imn_case", "0");
    } else {
        const auto& s = rep.chosen;
        w.line("topology case", std::to_string(s.imn.topology_case), "-");
        w.text("TX series", element_text(s.imn.tx_series, rep.f0));
        w.text("TX shunt", element_text(s.imn.tx_shunt, rep.f0));
        w.text("RX series", element_text(s.imn.rx_series, rep.f0));
        w.text("RX shunt", element_text(s.imn.rx_shunt, rep.f0));
        w.line("|S11| link", num(s.match.s11_db), "dB");
        w.line("|S22| link", num(s.match.s22_db), "dB");
        w.line("|S21| link", num(s.match.s21_db), "dB");
        w.key("imn_case", std::to_string(s.imn.topology_case));
        w.key("imn_tx_series", num(s.imn.tx_series.value));
        w.key("imn_tx_shunt", num(s.imn.tx_shunt.value));
        w.key("imn_rx_series", num(s.imn.rx_series.value));
        w.key("imn_rx_shunt", num(s.imn.rx_shunt.value));
        w.key("s11_link_db", num(s.match.s11_db));
        w.key("s22_link_db", num(s.match.s22_db));
    }

    w.section("efficiency");
    w.line("PTE", num(rep.pte.pte), "-");
    w.line("PTE_max", num(rep.pte.pte_max), "-");
    w.line("K_r", num(rep.pte.k_r), "-");
    w.line("gamma", num(rep.pte.gamma), "-");
    w.text("stable", rep.pte.stable ? "yes" : "no (K_r < 1)");
    w.key("pte", num(rep.pte.pte));
    w.key("pte_max", num(rep.pte.pte_max));

    if (rep.sar) {
        w.section("SAR budget");
        w.line("SAR limit", num(rep.sar->sar_limit), "W/kg");
        w.line("max transmit power", num(rep.sar->p_tx_max), "W");
        w.line("max delivered power", num(rep.sar->pdl_max), "W");
        w.key("pdl_max_w", num(rep.sar->pdl_max));
    }
    if (rep.harvester) {
        const auto& h = *rep.harvester;
        w.section("harvester");
        w.line("stages", std::to_string(h.chosen.n_stages), "-");
        w.line("boost Q", num(h.chosen.q_boost), "-");
        w.line("thermal voltage", num(h.chosen.v_t), "V");
        w.line("input impedance", cnum(h.chosen.z_in_eh), "ohm");
        w.line("R_rect", num(h.chosen_point.r_rect), "ohm");
        w.line("C_rect", num(h.chosen_point.c_rect), "F");
        w.line("V_out", num(h.chosen_point.v_out), "V");
        w.line("charge time", num(h.chosen_point.charge_time), "s");
        w.line("match residual", num(h.chosen_point.match_residual), "-");
        w.key("harvester_stages", std::to_string(h.chosen.n_stages));
        w.key("harvester_v_out_v", num(h.chosen_point.v_out));
    }
    return w.str();
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "f_hz,s11_db,s21_db,s22_db,pte_pct,pte_max_pct\n";
    for (const auto& r : rows) {
        out << fmt::format("{:.10g},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", r.f, r.s11_db, r.s21_db, r.s22_db,
                           r.pte_pct, r.pte_max_pct);
    }
}

std::string render_sweep_text(const std::vector<SweepRow>& rows) {
    std::string out = fmt::format("{:>14} {:>12} {:>12} {:>12} {:>10} {:>12}\n", "f [Hz]", "|S11| [dB]",
                                  "|S21| [dB]", "|S22| [dB]", "PTE [%]", "PTE_max [%]");
    for (const auto& r : rows) {
        out += fmt::format("{:>14.6g} {:>12.4f} {:>12.4f} {:>12.4f} {:>10.4f} {:>12.4f}\n", r.f, r.s11_db, r.s21_db,
                           r.s22_db, r.pte_pct, r.pte_max_pct);
    }
    return out;
}

void write_geometry_csv(std::ostream& out, const std::vector<SpiralGeometry>& candidates, double f,
                        double resistivity) {
    out << "shape,n,r_m,dr_m,w_m,l_h,area_m2,r_ac_ohm\n";
    for (const auto& g : candidates) {
        out << fmt::format("{},{},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g}\n", g.shape.name, g.n, g.r, g.dr, g.w,
                           inductance(g), g.area, ac_resistance(g, f, resistivity));
    }
}

void write_imn_csv(std::ostream& out, const ImnSynthesis& syn) {
    out << "topology_case,tx_series_kind,tx_series_value,tx_shunt_kind,tx_shunt_value,"
           "rx_series_kind,rx_series_value,rx_shunt_kind,rx_shunt_value,s11_db,s22_db,s21_db\n";
    for (const auto& s : syn.solutions) {
        const auto& m = s.imn;
        out << fmt::format("{},{},{:.6g},{},{:.6g},{},{:.6g},{},{:.6g},{:.3f},{:.3f},{:.6f}\n", m.topology_case,
                           to_string(m.tx_series.kind), m.tx_series.value, to_string(m.tx_shunt.kind),
                           m.tx_shunt.value, to_string(m.rx_series.kind), m.rx_series.value,
                           to_string(m.rx_shunt.kind), m.rx_shunt.value, s.match.s11_db, s.match.s22_db,
                           s.match.s21_db);
    }
}

std::string render_imn_text(const ImnSynthesis& syn) {
    std::string out = fmt::format("source impedance  {} ohm\nload impedance    {} ohm\n", cnum(syn.z_source),
                                  cnum(syn.z_load));
    if (syn.already_matched) return out + "already matched, no network needed\n";
    if (syn.solutions.empty()) return out + "no matching solution: " + syn.note + "\n";
    out += fmt::format("{} solutions of {} combinations\n", syn.solutions.size(), syn.combinations_tried);
    int rank = 1;
    for (const auto& s : syn.solutions) {
        const auto& m = s.imn;
        out += fmt::format(
            "#{} case {}: TX series {} {}, TX shunt {} {}, RX series {} {}, RX shunt {} {}; "
            "S11 {} dB, S22 {} dB, S21 {} dB\n",
            rank++, m.topology_case, to_string(m.tx_series.kind), num(m.tx_series.value),
            to_string(m.tx_shunt.kind), num(m.tx_shunt.value), to_string(m.rx_series.kind),
            num(m.rx_series.value), to_string(m.rx_shunt.kind), num(m.rx_shunt.value), num(s.match.s11_db),
            num(s.match.s22_db), num(s.match.s21_db));
    }
    out += "values in H for inductors and F for capacitors\n";
    return out;
}

void write_harvester_csv(std::ostream& out, const HarvesterDesign& d) {
    out << "n,q,r_rect_ohm,c_rect_f,v_out_v,charge_time_s,match_residual\n";
    for (const auto& p : d.table) {
        out << fmt::format("{},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g}\n", p.n, p.q, p.r_rect, p.c_rect, p.v_out,
                           p.charge_time, p.match_residual);
    }
}

std::string render_harvester_text(const HarvesterDesign& d) {
    const auto& p = d.chosen_point;
    return fmt::format(
        "stages            {} -\nboost Q           {} -\nR_rect            {} ohm\nC_rect            {} F\n"
        "V_out             {} V\ncharge time       {} s\nmatch residual    {} -\nboost resonance   {} Hz\n",
        d.chosen.n_stages, num(d.chosen.q_boost), num(p.r_rect), num(p.c_rect), num(p.v_out), num(p.charge_time),
        num(p.match_residual), num(boost_resonance()));
}

void write_tissue_csv(std::ostream& out, const std::vector<ColeColeLayer>& layers, const std::vector<double>& freqs) {
    out << "f_hz,layer,eps_real,eps_imag,sigma_eff_s_per_m\n";
    for (double f : freqs) {
        for (const auto& l : layers) {
            const Complex eps = complex_permittivity(l, f);
            out << fmt::format("{:.10g},{},{:.6g},{:.6g},{:.6g}\n", f, l.name, eps.real(), eps.imag(),
                               effective_conductivity(l, f));
        }
    }
}

}  // namespace nric
