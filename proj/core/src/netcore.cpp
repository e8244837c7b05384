#include "nric/netcore.hpp"

#include <cmath>
#include <string>

#include "nric/errors.hpp"

namespace nric {
namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require_rep(const TwoPort& net, Representation rep, const char* op) {
    if (net.rep != rep) {
        throw ValidationError(std::string(op) + ": expected " + std::string(to_string(rep)) +
                              " input, got " + std::string(to_string(net.rep)));
    }
    validate(net);
}

void require_nonsingular(Complex den, const char* what) {
    if (!finite(den) || std::abs(den) <= kDegenerateThreshold) {
        throw DegenerateNetwork(std::string(what) + ": singular denominator");
    }
}

void require_ports(double zp1, double zp2) {
    if (!(zp1 > 0.0) || !(zp2 > 0.0) || !std::isfinite(zp1) || !std::isfinite(zp2)) {
        throw ValidationError("reference impedances must be positive and finite");
    }
}

}  // namespace

std::string_view to_string(Representation rep) {
    switch (rep) {
        case Representation::S: return "S";
        case Representation::Z: return "Z";
        case Representation::ABCD: return "ABCD";
    }
    return "?";
}

TwoPort TwoPort::s(Complex s11, Complex s12, Complex s21, Complex s22, double zp1, double zp2) {
    return {Representation::S, s11, s12, s21, s22, zp1, zp2};
}

TwoPort TwoPort::z(Complex z11, Complex z12, Complex z21, Complex z22) {
    return {Representation::Z, z11, z12, z21, z22, 50.0, 50.0};
}

TwoPort TwoPort::abcd(Complex a, Complex b, Complex c, Complex d) {
    return {Representation::ABCD, a, b, c, d, 50.0, 50.0};
}

Complex TwoPort::determinant() const {
    using Wide = std::complex<long double>;
    const Wide d = Wide(m11) * Wide(m22) - Wide(m12) * Wide(m21);
    return {static_cast<double>(d.real()), static_cast<double>(d.imag())};
}

bool TwoPort::is_finite() const {
    return finite(m11) && finite(m12) && finite(m21) && finite(m22);
}

void validate(const TwoPort& net) {
    if (!net.is_finite()) throw ValidationError("two-port contains a non-finite entry");
    require_ports(net.zp1, net.zp2);
}

TwoPort z_to_s(const TwoPort& z, double zp1, double zp2) {
    require_rep(z, Representation::Z, "z_to_s");
    require_ports(zp1, zp2);
    const Complex z12z21 = z.m12 * z.m21;
    const Complex delta = (z.m11 + zp1) * (z.m22 + zp2) - z12z21;
    require_nonsingular(delta, "z_to_s");
    const double g = 2.0 * std::sqrt(zp1 * zp2);
    return TwoPort::s(((z.m11 - zp1) * (z.m22 + zp2) - z12z21) / delta,
                      g * z.m12 / delta,
                      g * z.m21 / delta,
                      ((z.m11 + zp1) * (z.m22 - zp2) - z12z21) / delta,
                      zp1, zp2);
}

TwoPort s_to_z(const TwoPort& s) {
    require_rep(s, Representation::S, "s_to_z");
    const Complex x = s.m12 * s.m21;
    const Complex d = (1.0 - s.m11) * (1.0 - s.m22) - x;
    require_nonsingular(d, "s_to_z");
    const double g = std::sqrt(s.zp1 * s.zp2);
    TwoPort z = TwoPort::z(s.zp1 * ((1.0 + s.m11) * (1.0 - s.m22) + x) / d,
                           g * 2.0 * s.m12 / d,
                           g * 2.0 * s.m21 / d,
                           s.zp2 * ((1.0 - s.m11) * (1.0 + s.m22) + x) / d);
    z.zp1 = s.zp1;
    z.zp2 = s.zp2;
    return z;
}

TwoPort abcd_to_s(const TwoPort& t, double zp1, double zp2) {
    require_rep(t, Representation::ABCD, "abcd_to_s");
    require_ports(zp1, zp2);
    const Complex a = t.m11, b = t.m12, c = t.m21, d = t.m22;
    const Complex den = a * zp2 + b + c * zp1 * zp2 + d * zp1;
    require_nonsingular(den, "abcd_to_s");
    const double g = 2.0 * std::sqrt(zp1 * zp2);
    return TwoPort::s((a * zp2 + b - c * zp1 * zp2 - d * zp1) / den,
                      g * (a * d - b * c) / den,
                      g / den,
                      (-a * zp2 + b - c * zp1 * zp2 + d * zp1) / den,
                      zp1, zp2);
}

TwoPort s_to_abcd(const TwoPort& s) {
    require_rep(s, Representation::S, "s_to_abcd");
    if (std::abs(s.m12) <= kDegenerateThreshold || std::abs(s.m21) <= kDegenerateThreshold) {
        throw DegenerateNetwork("s_to_abcd: no transmission (S12 or S21 is zero)");
    }
    const double zp1 = s.zp1, zp2 = s.zp2;
    const Complex p = 1.0 + s.m11, q = 1.0 - s.m11;
    const Complex u = 1.0 + s.m22, v = 1.0 - s.m22;
    const Complex x = s.m12 * s.m21;
    const Complex den = 2.0 * s.m21;
    TwoPort t = TwoPort::abcd(std::sqrt(zp1 / zp2) * (p * v + x) / den,
                              std::sqrt(zp1 * zp2) * (p * u - x) / den,
                              (q * v - x) / (den * std::sqrt(zp1 * zp2)),
                              std::sqrt(zp2 / zp1) * (q * u + x) / den);
    t.zp1 = zp1;
    t.zp2 = zp2;
    return t;
}

TwoPort z_to_abcd(const TwoPort& z) {
    require_rep(z, Representation::Z, "z_to_abcd");
    require_nonsingular(z.m21, "z_to_abcd");
    TwoPort t = TwoPort::abcd(z.m11 / z.m21, z.determinant() / z.m21, 1.0 / z.m21, z.m22 / z.m21);
    t.zp1 = z.zp1;
    t.zp2 = z.zp2;
    return t;
}

TwoPort abcd_to_z(const TwoPort& t) {
    require_rep(t, Representation::ABCD, "abcd_to_z");
    require_nonsingular(t.m21, "abcd_to_z");
    TwoPort z = TwoPort::z(t.m11 / t.m21, t.determinant() / t.m21, 1.0 / t.m21, t.m22 / t.m21);
    z.zp1 = t.zp1;
    z.zp2 = t.zp2;
    return z;
}

TwoPort to_abcd(const TwoPort& net) {
    switch (net.rep) {
        case Representation::ABCD: validate(net); return net;
        case Representation::Z: return z_to_abcd(net);
        case Representation::S: return s_to_abcd(net);
    }
    throw ValidationError("unknown representation");
}

TwoPort to_s(const TwoPort& net, double zp1, double zp2) {
    switch (net.rep) {
        case Representation::S:
            if (net.zp1 == zp1 && net.zp2 == zp2) {
                validate(net);
                return net;
            }
            return abcd_to_s(s_to_abcd(net), zp1, zp2);
        case Representation::Z: return z_to_s(net, zp1, zp2);
        case Representation::ABCD: return abcd_to_s(net, zp1, zp2);
    }
    throw ValidationError("unknown representation");
}

TwoPort cascade(const TwoPort& a, const TwoPort& b) {
    require_rep(a, Representation::ABCD, "cascade");
    require_rep(b, Representation::ABCD, "cascade");
    TwoPort r = TwoPort::abcd(a.m11 * b.m11 + a.m12 * b.m21,
                              a.m11 * b.m12 + a.m12 * b.m22,
                              a.m21 * b.m11 + a.m22 * b.m21,
                              a.m21 * b.m12 + a.m22 * b.m22);
    r.zp1 = a.zp1;
    r.zp2 = b.zp2;
    return r;
}

TwoPort cascade(std::initializer_list<TwoPort> chain) {
    if (chain.size() == 0) return TwoPort::identity();
    auto it = chain.begin();
    TwoPort acc = *it;
    require_rep(acc, Representation::ABCD, "cascade");
    for (++it; it != chain.end(); ++it) acc = cascade(acc, *it);
    return acc;
}

TwoPort series_impedance(Complex z) { return TwoPort::abcd(1.0, z, 0.0, 1.0); }

TwoPort shunt_admittance(Complex y) { return TwoPort::abcd(1.0, 0.0, y, 1.0); }

Complex input_reflection(const TwoPort& s, Complex gamma_load) {
    require_rep(s, Representation::S, "input_reflection");
    if (!finite(gamma_load) || std::abs(gamma_load) > 1.0 + 1e-12) {
        throw ValidationError("input_reflection: |gamma_load| must not exceed 1");
    }
    const Complex den = 1.0 - s.m22 * gamma_load;
    require_nonsingular(den, "input_reflection");
    return s.m11 + s.m12 * s.m21 * gamma_load / den;
}

Complex input_impedance(const TwoPort& t, Complex z_load) {
    require_rep(t, Representation::ABCD, "input_impedance");
    const Complex den = t.m21 * z_load + t.m22;
    require_nonsingular(den, "input_impedance");
    return (t.m11 * z_load + t.m12) / den;
}

Complex output_impedance(const TwoPort& t, Complex z_source) {
    require_rep(t, Representation::ABCD, "output_impedance");
    const Complex den = t.m21 * z_source + t.m11;
    require_nonsingular(den, "output_impedance");
    return (t.m22 * z_source + t.m12) / den;
}

Complex reflection(Complex z, double z_ref) {
    const Complex den = z + z_ref;
    require_nonsingular(den, "reflection");
    return (z - z_ref) / den;
}

Complex impedance_from_reflection(Complex gamma, double z_ref) {
    const Complex den = 1.0 - gamma;
    require_nonsingular(den, "impedance_from_reflection");
    return z_ref * (1.0 + gamma) / den;
}

double to_db(double magnitude) { return 20.0 * std::log10(magnitude); }

}  // namespace nric
