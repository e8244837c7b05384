#include "nric/harvester.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nric/errors.hpp"

namespace nric {
namespace {

// Below this the power series converges fast and without cancellation; above
// it the asymptotic series' smallest term is far under double precision.
constexpr double kSeriesLimit = 30.0;

double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

double i0_asymptotic(double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return std::exp(x) / std::sqrt(2.0 * kPi * x) * sum;
}

}  // namespace

double bessel_i0(double x) {
    if (!(x >= 0.0)) throw ValidationError("bessel_i0: argument must be >= 0");
    return x < kSeriesLimit ? i0_series(x) : i0_asymptotic(x);
}

double v_out(int n, double v_rx, double v_t) {
    if (n < 1) throw ValidationError("v_out: stage count must be >= 1");
    if (!(v_rx >= 0.0)) throw ValidationError("v_out: v_rx must be >= 0");
    if (!(v_t > 0.0)) throw ValidationError("v_out: v_t must be positive");
    return 2.0 * n * v_t * std::log(bessel_i0(v_rx / v_t));
}

RectifierInput rect_input(Complex z, double f) {
    if (!(z.real() > 0.0)) throw ValidationError("rect_input: Re{Z_in,EH} must be positive");
    if (!(f > 0.0)) throw ValidationError("rect_input: frequency must be positive");
    const double mag2 = std::norm(z);
    RectifierInput out;
    out.r_rect = mag2 / z.real();
    out.c_rect = -z.imag() / (angular(f) * mag2);
    out.capacitive = !(out.c_rect < 0.0);
    return out;
}

double boost_resonance(double l, double c) { return 1.0 / (2.0 * kPi * std::sqrt(l * c)); }

void HarvesterSpec::validate() const {
    if (n_stages < 1) throw ValidationError("harvester: n_stages must be >= 1");
    if (!(v_t > 0.0)) throw ValidationError("harvester: v_t must be positive");
    if (!(q_boost >= 1.0)) throw ValidationError("harvester: q_boost must be >= 1");
    if (!(c_store > 0.0)) throw ValidationError("harvester: c_store must be positive");
}

Complex StageScaling::z_in(int n, double f) const {
    const double r = r_stage * n;
    const double c = c_stage / n;
    const Complex y{1.0 / r, angular(f) * c};
    return 1.0 / y;
}

HarvesterDesign design_space(double v_rx, double target_v_out, double f, const HarvesterConstraints& k,
                             const StageScaling& scaling) {
    if (k.q_values.empty()) throw ValidationError("design_space: q range is empty");
    if (k.n_min < 1 || k.n_max < k.n_min) throw ValidationError("design_space: n range is empty");
    if (!(f > 0.0)) throw ValidationError("design_space: frequency must be positive");
    if (!(k.i_load_avg > 0.0) || !(k.c_store > 0.0)) {
        throw ValidationError("design_space: load current and storage capacitance must be positive");
    }
    for (double q : k.q_values) {
        if (!(q >= 1.0)) throw ValidationError("design_space: boost Q must be >= 1");
    }
    const double tissue_mag = std::abs(k.tissue_z);
    if (!(tissue_mag > 0.0)) throw ValidationError("design_space: tissue impedance must be non-zero");

    HarvesterDesign out;
    const HarvesterPoint* best = nullptr;
    double best_v = -1.0;
    double best_t = std::numeric_limits<double>::infinity();

    for (int n = k.n_min; n <= k.n_max; ++n) {
        const Complex z = scaling.z_in(n, f);
        const auto rect = rect_input(z, f);
        for (double q : k.q_values) {
            HarvesterPoint p;
            p.n = n;
            p.q = q;
            p.r_rect = rect.r_rect;
            p.c_rect = rect.c_rect;
            p.v_out = v_out(n, q * v_rx, k.v_t);
            const double r_out = n * k.v_t / k.i_load_avg;
            p.charge_time = 3.0 * r_out * k.c_store;
            p.match_residual = std::abs(z - std::conj(k.tissue_z)) / tissue_mag;
            out.table.push_back(p);
        }
    }

    for (const auto& p : out.table) {
        best_v = std::max(best_v, p.v_out);
        best_t = std::min(best_t, p.charge_time);
        if (p.v_out < target_v_out || p.charge_time > k.max_charge_time) continue;
        if (best == nullptr || p.n < best->n ||
            (p.n == best->n && (p.match_residual < best->match_residual ||
                                (p.match_residual == best->match_residual && p.q < best->q)))) {
            best = &p;
        }
    }

    if (best == nullptr) {
        std::ostringstream os;
        os << "max v_out " << best_v << " V vs target " << target_v_out << " V; min charge time " << best_t
           << " s vs limit " << k.max_charge_time << " s";
        throw InfeasibleDesign("harvester design space", os.str());
    }

    out.chosen_point = *best;
    out.chosen.n_stages = best->n;
    out.chosen.v_t = k.v_t;
    out.chosen.q_boost = best->q;
    out.chosen.c_store = k.c_store;
    out.chosen.f0 = f;
    out.chosen.z_in_eh = scaling.z_in(best->n, f);
    return out;
}

}  // namespace nric
