#pragma once

// Two-port network algebra: S/Z/ABCD conversions with real, possibly unequal,
// port reference impedances; chain cascading; terminated reflections.
//
// S-parameters use power-wave normalisation for real references, so for
// zp1 == zp2 every conversion reduces to the textbook equal-impedance form.

#include <initializer_list>
#include <string_view>

#include "nric/constants.hpp"

namespace nric {

enum class Representation { S, Z, ABCD };

std::string_view to_string(Representation rep);

struct TwoPort {
    Representation rep = Representation::ABCD;
    Complex m11{1.0, 0.0};
    Complex m12{0.0, 0.0};
    Complex m21{0.0, 0.0};
    Complex m22{1.0, 0.0};
    // Reference impedances. Only meaningful for S, carried through for the others.
    double zp1 = 50.0;
    double zp2 = 50.0;

    static TwoPort s(Complex s11, Complex s12, Complex s21, Complex s22,
                     double zp1 = 50.0, double zp2 = 50.0);
    static TwoPort z(Complex z11, Complex z12, Complex z21, Complex z22);
    static TwoPort abcd(Complex a, Complex b, Complex c, Complex d);
    static TwoPort identity() { return {}; }

    // m11 m22 - m12 m21 accumulated in extended precision.
    Complex determinant() const;
    bool is_finite() const;
};

// Throws ValidationError unless every entry is finite and both zp are positive.
void validate(const TwoPort& net);

TwoPort z_to_s(const TwoPort& z, double zp1, double zp2);
TwoPort s_to_z(const TwoPort& s);
TwoPort abcd_to_s(const TwoPort& abcd, double zp1, double zp2);
TwoPort s_to_abcd(const TwoPort& s);
TwoPort z_to_abcd(const TwoPort& z);
TwoPort abcd_to_z(const TwoPort& abcd);

// Representation-agnostic helpers. An S input is interpreted with its stored zp.
TwoPort to_abcd(const TwoPort& net);
TwoPort to_s(const TwoPort& net, double zp1, double zp2);

// Chain product a * b (port 2 of a feeds port 1 of b). Both must be ABCD.
TwoPort cascade(const TwoPort& a, const TwoPort& b);
TwoPort cascade(std::initializer_list<TwoPort> chain);

TwoPort series_impedance(Complex z);
TwoPort shunt_admittance(Complex y);

// Gamma_in = S11 + S21^2 Gamma_L / (1 - S22 Gamma_L), with |Gamma_L| <= 1.
Complex input_reflection(const TwoPort& s, Complex gamma_load);

// Impedance seen at port 1 with port 2 terminated by z_load (and the mirror).
Complex input_impedance(const TwoPort& abcd, Complex z_load);
Complex output_impedance(const TwoPort& abcd, Complex z_source);

Complex reflection(Complex z, double z_ref);
Complex impedance_from_reflection(Complex gamma, double z_ref);

double to_db(double magnitude);

}  // namespace nric
