#include "nric/tissue.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "nric/errors.hpp"

namespace nric {

void ColeColeLayer::validate() const {
    if (!(eps_inf >= 1.0)) throw ValidationError("layer '" + name + "': eps_inf must be >= 1");
    if (!(sigma_static >= 0.0)) throw ValidationError("layer '" + name + "': sigma must be >= 0");
    if (!(thickness > 0.0)) throw ValidationError("layer '" + name + "': thickness must be > 0");
    for (const auto& d : terms) {
        if (!(d.alpha >= 0.0 && d.alpha < 1.0)) {
            throw ValidationError("layer '" + name + "': alpha must lie in [0, 1)");
        }
        if (!(d.tau > 0.0) || !std::isfinite(d.delta_eps)) {
            throw ValidationError("layer '" + name + "': bad dispersion term");
        }
    }
}

void TissueStack::validate() const {
    if (layers.empty()) throw ValidationError("tissue stack has no layers");
    if (sections_per_layer < 1) throw ValidationError("sections_per_layer must be >= 1");
    if (!(face_area > 0.0)) throw ValidationError("tissue face_area must be positive");
    for (const auto& l : layers) l.validate();
}

double TissueStack::total_thickness() const {
    double t = 0.0;
    for (const auto& l : layers) t += l.thickness;
    return t;
}

ColeColeLayer skin_dry(double thickness) {
    return {"skin",
            4.0,
            {{32.0, 7.234e-12, 0.0}, {1100.0, 32.481e-9, 0.20}, {0.0, 159.155e-6, 0.20},
             {0.0, 15.915e-3, 0.20}},
            0.0002,
            thickness};
}

ColeColeLayer fat_not_infiltrated(double thickness) {
    return {"fat",
            2.5,
            {{3.0, 7.958e-12, 0.20}, {15.0, 15.915e-9, 0.10}, {3.3e4, 159.155e-6, 0.05},
             {1.0e7, 7.958e-3, 0.01}},
            0.01,
            thickness};
}

ColeColeLayer muscle(double thickness) {
    return {"muscle",
            4.0,
            {{50.0, 7.234e-12, 0.10}, {7000.0, 353.678e-9, 0.10}, {1.2e6, 318.31e-6, 0.10},
             {2.5e7, 2.274e-3, 0.0}},
            0.2,
            thickness};
}

ColeColeLayer vacuum(double thickness) { return {"vacuum", 1.0, {}, 0.0, thickness}; }

TissueStack default_stack(double face_area) {
    return {{skin_dry(2e-3), fat_not_infiltrated(2e-3), muscle(10e-3)}, 10, face_area};
}

Complex complex_permittivity(const ColeColeLayer& layer, double f) {
    if (!(f > 0.0)) throw ValidationError("complex_permittivity: frequency must be positive");
    const double w = angular(f);
    Complex eps{layer.eps_inf, 0.0};
    for (const auto& d : layer.terms) {
        const Complex jwt{0.0, w * d.tau};
        eps += d.delta_eps / (1.0 + std::pow(jwt, 1.0 - d.alpha));
    }
    eps += layer.sigma_static / Complex{0.0, w * kEps0};
    return eps;
}

double effective_conductivity(const ColeColeLayer& layer, double f) {
    return -angular(f) * kEps0 * complex_permittivity(layer, f).imag();
}

double loss_scaling(double sigma, double omega) {
    if (!(sigma >= 0.0)) throw ValidationError("loss_scaling: sigma must be >= 0");
    if (!(omega > 0.0)) throw ValidationError("loss_scaling: omega must be positive");
    return sigma * omega * omega;
}

TwoPort ladder_two_port(const TissueStack& stack, double f) {
    stack.validate();
    if (!(f > 0.0)) throw ValidationError("ladder_two_port: frequency must be positive");
    const double w = angular(f);
    TwoPort acc = TwoPort::identity();
    for (const auto& layer : stack.layers) {
        const double dz = layer.thickness / stack.sections_per_layer;
        const Complex z_h{0.0, w * kMu0 * dz};
        const Complex y_v = Complex{0.0, w * kEps0 * dz} * complex_permittivity(layer, f);
        const TwoPort section = cascade(series_impedance(z_h), shunt_admittance(y_v));
        for (int i = 0; i < stack.sections_per_layer; ++i) acc = cascade(acc, section);
    }
    return acc;
}

TwoPort modified_coil_abcd(const TwoPort& t_coil, const TissueStack& stack, double f) {
    TwoPort coil = to_abcd(t_coil);
    TwoPort out = cascade(coil, ladder_two_port(stack, f));
    out.zp1 = t_coil.zp1;
    out.zp2 = t_coil.zp2;
    return out;
}

std::vector<ColeColeLayer> read_layers(std::istream& in) {
    std::vector<ColeColeLayer> layers;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        ColeColeLayer layer;
        if (!(is >> layer.name)) continue;
        if (!(is >> layer.eps_inf >> layer.sigma_static >> layer.thickness)) {
            throw IoError("layer record needs: name eps_inf sigma thickness", line_no);
        }
        std::vector<double> rest;
        for (double v; is >> v;) rest.push_back(v);
        if (!is.eof()) throw IoError("layer record has a non-numeric field", line_no);
        if (rest.size() % 3 != 0) throw IoError("dispersion terms come in (delta_eps tau alpha) triples", line_no);
        for (std::size_t i = 0; i < rest.size(); i += 3) layer.terms.push_back({rest[i], rest[i + 1], rest[i + 2]});
        try {
            layer.validate();
        } catch (const ValidationError& e) {
            throw IoError(e.what(), line_no);
        }
        layers.push_back(std::move(layer));
    }
    if (layers.empty()) throw IoError("layer file contains no records");
    return layers;
}

void write_layers(std::ostream& out, const std::vector<ColeColeLayer>& layers) {
    const auto old_prec = out.precision(17);
    out << "# name eps_inf sigma_S_per_m thickness_m [delta_eps tau_s alpha]...\n";
    for (const auto& l : layers) {
        out << l.name << ' ' << l.eps_inf << ' ' << l.sigma_static << ' ' << l.thickness;
        for (const auto& d : l.terms) out << ' ' << d.delta_eps << ' ' << d.tau << ' ' << d.alpha;
        out << '\n';
    }
    out.precision(old_prec);
}

NetworkTable::NetworkTable(std::vector<double> freqs, std::vector<TwoPort> rows, double reciprocity_tol)
    : freqs_(std::move(freqs)), rows_(std::move(rows)) {
    if (freqs_.size() != rows_.size()) throw ValidationError("network table: size mismatch");
    if (freqs_.empty()) throw ValidationError("network table: no rows");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto row = std::to_string(i);
        if (rows_[i].rep != Representation::S) throw ValidationError("network table row " + row + ": not S data");
        validate(rows_[i]);
        if (!(freqs_[i] > 0.0)) throw ValidationError("network table row " + row + ": frequency must be positive");
        if (i > 0 && !(freqs_[i] > freqs_[i - 1])) {
            throw ValidationError("network table row " + row + ": frequency axis not increasing");
        }
        const double scale = std::max(std::abs(rows_[i].m12), std::abs(rows_[i].m21));
        if (std::abs(rows_[i].m12 - rows_[i].m21) > reciprocity_tol * scale) {
            throw ValidationError("network table row " + row + ": S12 and S21 differ beyond tolerance");
        }
    }
}

TwoPort NetworkTable::at(double f) const {
    if (!(f >= freqs_.front() && f <= freqs_.back())) {
        throw ValidationError("network table: frequency outside tabulated range");
    }
    const auto it = std::lower_bound(freqs_.begin(), freqs_.end(), f);
    const auto hi = static_cast<std::size_t>(it - freqs_.begin());
    if (freqs_[hi] == f) return rows_[hi];
    const std::size_t lo = hi - 1;
    const double s = (f - freqs_[lo]) / (freqs_[hi] - freqs_[lo]);
    const auto& a = rows_[lo];
    const auto& b = rows_[hi];
    auto mix = [s](Complex x, Complex y) { return x + s * (y - x); };
    return TwoPort::s(mix(a.m11, b.m11), mix(a.m12, b.m12), mix(a.m21, b.m21), mix(a.m22, b.m22), a.zp1, a.zp2);
}

NetworkTable import_override(std::vector<double> freqs, std::vector<TwoPort> rows, double reciprocity_tol) {
    return NetworkTable(std::move(freqs), std::move(rows), reciprocity_tol);
}

}  // namespace nric
