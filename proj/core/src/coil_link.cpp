#include "nric/coil_link.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nric/errors.hpp"

namespace nric {

double CoilPair::mutual() const { return k * std::sqrt(l1 * l2); }

void CoilPair::validate() const {
    if (!(l1 > 0.0) || !(l2 > 0.0) || !std::isfinite(l1) || !std::isfinite(l2)) {
        throw ValidationError("coil inductances must be positive and finite");
    }
    if (!(r1 >= 0.0) || !(r2 >= 0.0) || !std::isfinite(r1) || !std::isfinite(r2)) {
        throw ValidationError("coil resistances must be non-negative and finite");
    }
    if (!(k >= 0.0) || !(k < 1.0)) throw ValidationError("coupling k must lie in [0, 1)");
}

void PortPair::validate() const {
    if (!(zp1 > 0.0) || !(zp2 > 0.0) || !std::isfinite(zp1) || !std::isfinite(zp2)) {
        throw ValidationError("port impedances must be positive and finite");
    }
}

LinkAuxiliaries auxiliaries(const CoilPair& c, const PortPair& p) {
    c.validate();
    p.validate();
    const double m = c.mutual();
    return {2.0 * m * std::sqrt(p.zp1 * p.zp2),
            (c.r1 + p.zp1) * (c.r2 + p.zp2),
            c.l1 * c.l2 - m * m,
            c.l1 * (c.r2 + p.zp2) + c.l2 * (c.r1 + p.zp1)};
}

TwoPort coil_z(const CoilPair& c, double f) {
    c.validate();
    if (!(f > 0.0)) throw ValidationError("coil_z: frequency must be positive");
    const double w = angular(f);
    const Complex zm{0.0, w * c.mutual()};
    return TwoPort::z({c.r1, w * c.l1}, zm, zm, {c.r2, w * c.l2});
}

TwoPort coil_abcd(const CoilPair& c, double f) {
    if (!(c.k > 0.0)) throw DegenerateNetwork("coil_abcd: k = 0 has no transmission");
    c.validate();
    if (!(f > 0.0)) throw ValidationError("coil_abcd: frequency must be positive");
    // Closed form with Z21 = j w M. B is solved from the rounded A, C, D so the
    // stored matrix keeps A D - B C = 1 as closely as double allows.
    using Wide = std::complex<long double>;
    const long double m = static_cast<long double>(c.k) * std::sqrt(static_cast<long double>(c.l1) * c.l2);
    const long double x = 1.0L / (static_cast<long double>(angular(f)) * m);
    const Complex a{static_cast<double>(c.l1 / m), static_cast<double>(-c.r1 * x)};
    const Complex d{static_cast<double>(c.l2 / m), static_cast<double>(-c.r2 * x)};
    const Complex cc{0.0, static_cast<double>(-x)};
    const Wide b = (Wide(a) * Wide(d) - 1.0L) / Wide(cc);
    return TwoPort::abcd(a, {static_cast<double>(b.real()), static_cast<double>(b.imag())}, cc, d);
}

double s21_mag(const CoilPair& c, const PortPair& p, double f) {
    if (!(f >= 0.0)) throw ValidationError("s21_mag: frequency must be non-negative");
    const auto t = auxiliaries(c, p);
    const double w = angular(f);
    const double a = t.t2 - t.t3 * w * w;
    return w * t.t1 / std::sqrt(a * a + w * w * t.t4 * t.t4);
}

double f_opt(const CoilPair& c, const PortPair& p) {
    const auto t = auxiliaries(c, p);
    if (!(t.t3 > 0.0)) throw ValidationError("f_opt: L1 L2 - M^2 must be positive");
    return std::sqrt(t.t2 / t.t3) / (2.0 * kPi);
}

double s_max(const CoilPair& c, const PortPair& p) {
    const auto t = auxiliaries(c, p);
    return t.t1 / t.t4;
}

double l_opt(double f_target, double r1, double r2, const PortPair& p, double k) {
    p.validate();
    if (!(f_target > 0.0)) throw ValidationError("l_opt: target frequency must be positive");
    if (!(k >= 0.0) || !(k < 1.0)) throw ValidationError("l_opt: k must lie in [0, 1)");
    if (!(r1 >= 0.0) || !(r2 >= 0.0)) throw ValidationError("l_opt: resistances must be >= 0");
    const double w = angular(f_target);
    const double radicand = (r1 + p.zp1) * (r2 + p.zp2) / (w * w * (1.0 - k * k));
    return std::sqrt(radicand);
}

double ss_capacitor(double l, double f) {
    if (!(l > 0.0) || !(f > 0.0)) throw ValidationError("ss_capacitor: inductance and frequency must be positive");
    const double w = angular(f);
    return 1.0 / (w * w * l);
}

double partner_inductance(double l_opt_h, double l1_chosen) {
    if (!(l_opt_h > 0.0) || !(l1_chosen > 0.0)) {
        throw ValidationError("partner_inductance: inductances must be positive");
    }
    return l_opt_h * l_opt_h / l1_chosen;
}

Extraction extract_params(const TwoPort& s, double f) {
    if (s.rep != Representation::S) throw ValidationError("extract_params: expected S input");
    validate(s);
    if (!(f > 0.0)) throw ValidationError("extract_params: frequency must be positive");

    const double scale = std::max(std::abs(s.m12), std::abs(s.m21));
    if (scale <= kDegenerateThreshold) throw DegenerateNetwork("extract_params: S12 = 0");
    if (std::abs(s.m12 - s.m21) > 1e-6 * scale) {
        throw ValidationError("extract_params: S12 and S21 differ beyond 1e-6 relative");
    }
    const Complex s21 = 0.5 * (s.m12 + s.m21);

    const Complex p = 1.0 + s.m11, q = 1.0 - s.m11;
    const Complex u = 1.0 + s.m22, v = 1.0 - s.m22;
    const Complex x = s21 * s21;
    const Complex den = q * v - x;
    if (std::abs(den) <= kDegenerateThreshold) throw DegenerateNetwork("extract_params: qv - x = 0");

    const double w = angular(f);
    const Complex z11 = s.zp1 * (p * v + x) / den;
    const Complex z22 = s.zp2 * (q * u + x) / den;

    const TwoPort sym = TwoPort::s(s.m11, s21, s21, s.m22, s.zp1, s.zp2);
    const TwoPort t = s_to_abcd(sym);
    const double ad = t.m11.real() * t.m22.real();

    Extraction out;
    out.coils.l1 = z11.imag() / w;
    out.coils.r1 = z11.real();
    out.coils.l2 = z22.imag() / w;
    out.coils.r2 = z22.real();
    out.coils.k = ad > 0.0 ? 1.0 / std::sqrt(ad) : std::numeric_limits<double>::quiet_NaN();

    std::ostringstream issue;
    if (!(out.coils.l1 > 0.0) || !(out.coils.l2 > 0.0)) issue << "non-positive inductance; ";
    if (!(out.coils.r1 >= 0.0) || !(out.coils.r2 >= 0.0)) issue << "negative resistance; ";
    if (!(out.coils.k >= 0.0 && out.coils.k < 1.0)) {
        issue << "k outside [0, 1) (Re{A} Re{D} = " << ad << "); ";
    }
    out.issue = issue.str();
    out.valid = out.issue.empty();
    return out;
}

}  // namespace nric
