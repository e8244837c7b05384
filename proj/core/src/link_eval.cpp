#include "nric/link_eval.hpp"

#include <cmath>
#include <limits>

#include "nric/errors.hpp"

namespace nric {

double pte_two_port(const TwoPort& s, Complex gamma_load) {
    const Complex gamma_in = input_reflection(s, gamma_load);
    const double loss_in = 1.0 - std::norm(gamma_in);
    if (!(loss_in > kDegenerateThreshold)) throw DegenerateNetwork("pte_two_port: |Gamma_in| = 1");
    return std::norm(s.m21) * (1.0 - std::norm(gamma_load)) /
           (loss_in * std::norm(1.0 - s.m22 * gamma_load));
}

PteMax pte_max(const TwoPort& s) {
    if (s.rep != Representation::S) throw ValidationError("pte_max: expected S input");
    validate(s);
    const Complex s21sq = s.m21 * s.m21;
    if (std::abs(s21sq) <= kDegenerateThreshold) throw DegenerateNetwork("pte_max: S21 = 0");
    const double a = std::norm(s.m11 * s.m22 - s21sq);
    const double b = -std::norm(s.m11);
    const double c = -std::norm(s.m22);
    PteMax out;
    out.k_r = (1.0 + a + b + c) / (2.0 * std::abs(s21sq));
    if (out.k_r < 1.0) {
        out.stable = false;
        out.value = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    // K - sqrt(K^2 - 1), written without the cancellation.
    out.value = 1.0 / (out.k_r + std::sqrt(out.k_r * out.k_r - 1.0));
    return out;
}

double gamma_correction(const PortPair& p) {
    p.validate();
    constexpr double z0 = 50.0;
    const double z1 = p.zp1, z2 = p.zp2;
    if (z2 > z0 && z1 < z0) return z2 / z1;
    if (z2 > z0 && z1 > z0) return (z2 / z0) * (z1 / z0);
    if (z2 < z0 && z1 > z0) return z1 / z2;
    if (z2 < z0 && z1 < z0) return (z0 / z2) * (z0 / z1);
    return 1.0;
}

double pte_link(Complex s21_link, const PortPair& ports) {
    return gamma_correction(ports) * std::norm(s21_link);
}

PteReport evaluate_link(const TwoPort& s_link, const PortPair& ports, double f0) {
    const TwoPort s = to_s(s_link, ports.zp1, ports.zp2);
    const auto best = pte_max(s);
    PteReport r;
    r.gamma = gamma_correction(ports);
    r.pte = r.gamma * std::norm(s.m21);
    r.pte_max = best.value;
    r.k_r = best.k_r;
    r.stable = best.stable;
    r.f0 = f0;
    return r;
}

SarBudget sar_constrained_pdl(double p_tx_max, double pte, double sar_limit) {
    if (!(p_tx_max >= 0.0)) throw ValidationError("sar_constrained_pdl: transmit power must be >= 0");
    if (!(pte >= 0.0 && pte <= 1.0)) throw ValidationError("sar_constrained_pdl: pte must lie in [0, 1]");
    return {sar_limit, p_tx_max, p_tx_max * pte};
}

}  // namespace nric
