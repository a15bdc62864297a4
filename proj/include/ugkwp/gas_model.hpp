// Gas description and conversions between conservative, primitive, and
// Maxwellian parameterizations.
//
// Code units: the reference velocity is sqrt(2*R*Tref), so temperature and
// the Maxwellian parameter lambda relate by T = 1/(2*lambda), the pressure is
// p = rho*T, and the sound speed is c = sqrt(gamma*T).
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ugkwp {

// Conservative 5-vector / generic flux 5-vector arithmetic.
using Vec5 = std::array<double, 5>;

inline Vec5 operator+(const Vec5& a, const Vec5& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4]};
}
inline Vec5 operator-(const Vec5& a, const Vec5& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], a[4] - b[4]};
}
inline Vec5 operator*(double s, const Vec5& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3], s * a[4]};
}
inline Vec5& operator+=(Vec5& a, const Vec5& b) {
    for (int i = 0; i < 5; ++i) a[i] += b[i];
    return a;
}
inline Vec5& operator-=(Vec5& a, const Vec5& b) {
    for (int i = 0; i < 5; ++i) a[i] -= b[i];
    return a;
}

struct unphysical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ViscosityLaw { vhs, constant };

struct GasModel {
    double omega = 0.81;     // temperature exponent of the VHS law
    double mu_ref = 1.0;     // viscosity at the reference temperature
    int K = 0;               // internal degrees of freedom
    double gamma = 5.0 / 3.0;
    double T0 = 1.0;         // reference temperature of the viscosity law
    ViscosityLaw law = ViscosityLaw::vhs;
    double prandtl = 1.0;    // BGK

    static GasModel make(int K, double omega, double mu_ref, double T0,
                         ViscosityLaw law = ViscosityLaw::vhs);
};

struct MacroState {
    double rho = 0.0;
    std::array<double, 3> mom{0.0, 0.0, 0.0};
    double rhoE = 0.0;

    Vec5 vec() const { return {rho, mom[0], mom[1], mom[2], rhoE}; }
    static MacroState from_vec(const Vec5& v) {
        return {v[0], {v[1], v[2], v[3]}, v[4]};
    }
};

inline MacroState operator+(const MacroState& a, const MacroState& b) {
    return MacroState::from_vec(a.vec() + b.vec());
}
inline MacroState operator-(const MacroState& a, const MacroState& b) {
    return MacroState::from_vec(a.vec() - b.vec());
}
inline MacroState operator*(double s, const MacroState& a) {
    return MacroState::from_vec(s * a.vec());
}

struct Primitive {
    double rho = 0.0;
    std::array<double, 3> U{0.0, 0.0, 0.0};
    double lambda = 0.0;  // inverse-temperature parameter, 1/(2T)
    double p = 0.0;
};

Primitive to_primitive(const MacroState& W, const GasModel& gas);
MacroState to_conservative(const Primitive& prim, const GasModel& gas);

inline double temperature(const Primitive& prim) { return 0.5 / prim.lambda; }

inline double sound_speed(const Primitive& prim, const GasModel& gas) {
    return std::sqrt(gas.gamma * temperature(prim));
}

// mu = mu_ref*(T/T0)^omega (constant law ignores T)
double viscosity(double T, const GasModel& gas);

// tau = mu(T)/p
double relaxation_time(const Primitive& prim, const GasModel& gas);

// Dimensionless VHS reference viscosity for a case specified by a Knudsen
// number: mu_ref = 15 sqrt(pi) / (2 (5-2w)(7-2w)) * Kn.
double mu_ref_from_knudsen(double Kn, double omega);

// Specific internal (xi) energy of the equilibrium state: K/(4 lambda).
inline double internal_energy(const Primitive& prim, const GasModel& gas) {
    return gas.K / (4.0 * prim.lambda);
}

}  // namespace ugkwp
