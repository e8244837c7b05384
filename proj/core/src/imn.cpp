#include "nric/imn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <tuple>

#include "nric/errors.hpp"

namespace nric {
namespace {

// One side of the match: reactance X of the series element and susceptance
// B of the shunt element.
struct SideRoot {
    double x = 0.0;
    double b = 0.0;
};

// Shunt across the port resistance r0, then series toward the core:
//   z_target = jX + 1 / (1/r0 + jB).
std::vector<SideRoot> shunt_at_port_roots(double r0, Complex z_target) {
    const double rt = z_target.real(), xt = z_target.imag();
    std::vector<SideRoot> out;
    if (!(rt > 0.0) || !(rt < r0)) return out;
    const double mag = std::sqrt(r0 / rt - 1.0) / r0;
    for (double b : {mag, -mag}) {
        const double x = xt + b * r0 * r0 / (1.0 + b * b * r0 * r0);
        out.push_back({x, b});
    }
    return out;
}

// Series next to the port resistance r0, then shunt toward the core:
//   1 / z_target = jB + 1 / (r0 + jX).
std::vector<SideRoot> series_at_port_roots(double r0, Complex z_target) {
    const Complex yt = 1.0 / z_target;
    const double gt = yt.real(), bt = yt.imag();
    std::vector<SideRoot> out;
    if (!(gt > 0.0) || !(gt < 1.0 / r0)) return out;
    const double mag = std::sqrt(r0 / gt - r0 * r0);
    for (double x : {mag, -mag}) {
        const double b = bt + x / (r0 * r0 + x * x);
        out.push_back({x, b});
    }
    return out;
}

bool usable(double v) { return std::isfinite(v) && std::abs(v) > 1e-300; }

Element series_element(double x, double w) {
    return x > 0.0 ? Element{ElementKind::SeriesInductor, x / w} : Element{ElementKind::SeriesCapacitor, -1.0 / (w * x)};
}

Element shunt_element(double b, double w) {
    return b > 0.0 ? Element{ElementKind::ShuntCapacitor, b / w} : Element{ElementKind::ShuntInductor, -1.0 / (w * b)};
}

// Simultaneous conjugate-match reflections (reciprocal or not), power-wave normalised.
std::pair<Complex, Complex> conjugate_match(const TwoPort& s) {
    const Complex delta = s.m11 * s.m22 - s.m12 * s.m21;
    auto solve = [&](Complex sa, Complex sb) {
        const double b = 1.0 + std::norm(sa) - std::norm(sb) - std::norm(delta);
        const Complex c = sa - delta * std::conj(sb);
        if (std::abs(c) <= 1e-300) return Complex{0.0, 0.0};
        const double disc = std::max(0.0, b * b - 4.0 * std::norm(c));
        const double root = b > 0.0 ? b - std::sqrt(disc) : b + std::sqrt(disc);
        return root / (2.0 * c);
    };
    return {solve(s.m11, s.m22), solve(s.m22, s.m11)};
}

}  // namespace

std::string_view to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::SeriesInductor: return "series-L";
        case ElementKind::SeriesCapacitor: return "series-C";
        case ElementKind::ShuntInductor: return "shunt-L";
        case ElementKind::ShuntCapacitor: return "shunt-C";
    }
    return "?";
}

bool Element::is_series() const {
    return kind == ElementKind::SeriesInductor || kind == ElementKind::SeriesCapacitor;
}

bool Element::is_capacitor() const {
    return kind == ElementKind::SeriesCapacitor || kind == ElementKind::ShuntCapacitor;
}

Complex Element::immittance(double f) const {
    const double w = angular(f);
    switch (kind) {
        case ElementKind::SeriesInductor: return {0.0, w * value};
        case ElementKind::SeriesCapacitor: return {0.0, -1.0 / (w * value)};
        case ElementKind::ShuntInductor: return {0.0, -1.0 / (w * value)};
        case ElementKind::ShuntCapacitor: return {0.0, w * value};
    }
    return {};
}

TwoPort Element::abcd(double f) const {
    return is_series() ? series_impedance(immittance(f)) : shunt_admittance(immittance(f));
}

int LSectionIMN::capacitor_count() const {
    return tx_series.is_capacitor() + tx_shunt.is_capacitor() + rx_series.is_capacitor() +
           rx_shunt.is_capacitor();
}

void LSectionIMN::validate() const {
    if (topology_case < 1 || topology_case > 4) throw ValidationError("IMN topology case must be 1..4");
    for (const auto* e : {&tx_series, &rx_series}) {
        if (!e->is_series()) throw ValidationError("IMN series slot holds a shunt element");
    }
    for (const auto* e : {&tx_shunt, &rx_shunt}) {
        if (e->is_series()) throw ValidationError("IMN shunt slot holds a series element");
    }
    for (const auto* e : {&tx_series, &tx_shunt, &rx_series, &rx_shunt}) {
        if (!(e->value > 0.0) || !std::isfinite(e->value)) {
            throw ValidationError("IMN element values must be positive and finite");
        }
    }
}

LinkNetwork assemble_link(const LSectionIMN& imn, const TwoPort& t_coil, double f, const PortPair& ports) {
    imn.validate();
    ports.validate();
    const TwoPort core = to_abcd(t_coil);
    const TwoPort tx = imn.tx_shunt_at_port() ? cascade(imn.tx_shunt.abcd(f), imn.tx_series.abcd(f))
                                              : cascade(imn.tx_series.abcd(f), imn.tx_shunt.abcd(f));
    const TwoPort rx = imn.rx_shunt_at_port() ? cascade(imn.rx_series.abcd(f), imn.rx_shunt.abcd(f))
                                              : cascade(imn.rx_shunt.abcd(f), imn.rx_series.abcd(f));
    LinkNetwork link{cascade({tx, core, rx}), f, ports};
    link.t_link.zp1 = ports.zp1;
    link.t_link.zp2 = ports.zp2;
    return link;
}

MatchReport verify_match(const LinkNetwork& link) {
    const TwoPort s = abcd_to_s(link.t_link, link.ports.zp1, link.ports.zp2);
    return {to_db(std::abs(s.m11)), to_db(std::abs(s.m22)), to_db(std::abs(s.m21))};
}

ImnSynthesis synthesize_imn(const TwoPort& t_coil, const PortPair& ports, double f0) {
    ports.validate();
    if (!(f0 > 0.0)) throw ValidationError("synthesize_imn: f0 must be positive");
    const TwoPort core = to_abcd(t_coil);
    const TwoPort s = abcd_to_s(core, ports.zp1, ports.zp2);
    const double w = angular(f0);

    ImnSynthesis out;
    if (std::abs(s.m11) < 1e-9 && std::abs(s.m22) < 1e-9) {
        out.already_matched = true;
        out.note = "core network already matched at both ports; no L-section required";
        out.z_source = ports.zp1;
        out.z_load = ports.zp2;
        return out;
    }

    const Complex z_in1 = input_impedance(core, ports.zp2);
    const Complex z_in2 = output_impedance(core, ports.zp1);
    if (!(z_in1.real() > 0.0) || !(z_in2.real() > 0.0)) {
        out.matchable = false;
        out.note = "terminated port impedance has no positive real part; unmatchable";
        return out;
    }

    const Complex delta = s.m11 * s.m22 - s.m12 * s.m21;
    const double k_stab = (1.0 - std::norm(s.m11) - std::norm(s.m22) + std::norm(delta)) /
                          (2.0 * std::abs(s.m12 * s.m21));
    if (!(k_stab >= 1.0)) {
        out.matchable = false;
        out.note = "no simultaneous conjugate match exists (stability factor < 1)";
        return out;
    }

    const auto [gamma_s, gamma_l] = conjugate_match(s);
    out.z_source = impedance_from_reflection(gamma_s, ports.zp1);
    out.z_load = impedance_from_reflection(gamma_l, ports.zp2);

    const std::array<std::vector<SideRoot>, 2> tx_roots{series_at_port_roots(ports.zp1, out.z_source),
                                                       shunt_at_port_roots(ports.zp1, out.z_source)};
    const std::array<std::vector<SideRoot>, 2> rx_roots{series_at_port_roots(ports.zp2, out.z_load),
                                                       shunt_at_port_roots(ports.zp2, out.z_load)};

    for (int topology = 1; topology <= 4; ++topology) {
        const bool tx_shunt_port = topology == 1 || topology == 2;
        const bool rx_shunt_port = topology == 1 || topology == 3;
        const auto& txr = tx_roots[tx_shunt_port ? 1 : 0];
        const auto& rxr = rx_roots[rx_shunt_port ? 1 : 0];
        for (int kinds = 0; kinds < 16; ++kinds) {
            ++out.combinations_tried;
            // bit set = inductor for that slot
            const bool tx_series_l = kinds & 1, tx_shunt_l = kinds & 2;
            const bool rx_series_l = kinds & 4, rx_shunt_l = kinds & 8;
            auto pick = [](const std::vector<SideRoot>& roots, bool series_l, bool shunt_l) {
                std::optional<SideRoot> hit;
                for (const auto& r : roots) {
                    if (!usable(r.x) || !usable(r.b)) continue;
                    if ((r.x > 0.0) == series_l && (r.b < 0.0) == shunt_l) hit = r;
                }
                return hit;
            };
            const auto tx = pick(txr, tx_series_l, tx_shunt_l);
            const auto rx = pick(rxr, rx_series_l, rx_shunt_l);
            if (!tx || !rx) continue;

            ImnSolution sol;
            sol.imn.topology_case = topology;
            sol.imn.tx_series = series_element(tx->x, w);
            sol.imn.tx_shunt = shunt_element(tx->b, w);
            sol.imn.rx_series = series_element(rx->x, w);
            sol.imn.rx_shunt = shunt_element(rx->b, w);
            const auto link = assemble_link(sol.imn, core, f0, ports);
            sol.match = verify_match(link);
            if (sol.match.s11_db > kMatchThresholdDb || sol.match.s22_db > kMatchThresholdDb) continue;
            sol.s21_mag = std::abs(abcd_to_s(link.t_link, ports.zp1, ports.zp2).m21);
            sol.reactance_sum = std::abs(tx->x) + 1.0 / std::abs(tx->b) + std::abs(rx->x) + 1.0 / std::abs(rx->b);
            out.solutions.push_back(sol);
        }
    }

    std::stable_sort(out.solutions.begin(), out.solutions.end(), [](const ImnSolution& a, const ImnSolution& b) {
        const int ca = a.imn.capacitor_count(), cb = b.imn.capacitor_count();
        if (ca != cb) return ca > cb;
        const double scale = std::max(a.s21_mag, b.s21_mag);
        if (std::abs(a.s21_mag - b.s21_mag) > 1e-9 * scale) return a.s21_mag > b.s21_mag;
        return a.reactance_sum < b.reactance_sum;
    });
    if (out.solutions.empty()) out.note = "no L-section variant yields positive element values";
    return out;
}

}  // namespace nric
