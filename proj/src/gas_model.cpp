#include "ugkwp/gas_model.hpp"

namespace ugkwp {

GasModel GasModel::make(int K, double omega, double mu_ref, double T0,
                        ViscosityLaw law) {
    if (K < 0) throw unphysical_error("gas model: K must be non-negative");
    if (law == ViscosityLaw::vhs && (omega < 0.5 || omega > 1.0))
        throw unphysical_error("gas model: omega outside [0.5, 1.0]");
    if (mu_ref <= 0.0) throw unphysical_error("gas model: mu_ref must be positive");
    if (T0 <= 0.0) throw unphysical_error("gas model: T0 must be positive");
    GasModel g;
    g.K = K;
    g.omega = omega;
    g.mu_ref = mu_ref;
    g.T0 = T0;
    g.law = law;
    g.gamma = (K + 5.0) / (K + 3.0);
    return g;
}

Primitive to_primitive(const MacroState& W, const GasModel& gas) {
    if (!(W.rho > 0.0))
        throw unphysical_error("to_primitive: non-positive density");
    Primitive prim;
    prim.rho = W.rho;
    for (int d = 0; d < 3; ++d) prim.U[d] = W.mom[d] / W.rho;
    const double kin = 0.5 * (W.mom[0] * W.mom[0] + W.mom[1] * W.mom[1] +
                              W.mom[2] * W.mom[2]) / W.rho;
    const double eint = W.rhoE - kin;
    if (!(eint > 0.0))
        throw unphysical_error("to_primitive: non-positive internal energy");
    prim.lambda = W.rho * (gas.K + 3.0) / (4.0 * eint);
    prim.p = W.rho / (2.0 * prim.lambda);
    return prim;
}

MacroState to_conservative(const Primitive& prim, const GasModel& gas) {
    MacroState W;
    W.rho = prim.rho;
    double u2 = 0.0;
    for (int d = 0; d < 3; ++d) {
        W.mom[d] = prim.rho * prim.U[d];
        u2 += prim.U[d] * prim.U[d];
    }
    W.rhoE = prim.rho * (0.5 * u2 + (gas.K + 3.0) / (4.0 * prim.lambda));
    return W;
}

double viscosity(double T, const GasModel& gas) {
    if (!(T > 0.0)) throw unphysical_error("viscosity: unphysical temperature");
    if (gas.law == ViscosityLaw::constant) return gas.mu_ref;
    return gas.mu_ref * std::pow(T / gas.T0, gas.omega);
}

double relaxation_time(const Primitive& prim, const GasModel& gas) {
    if (!(prim.p > 0.0)) throw unphysical_error("relaxation_time: unphysical state");
    return viscosity(temperature(prim), gas) / prim.p;
}

double mu_ref_from_knudsen(double Kn, double omega) {
    const double pi = 3.14159265358979323846;
    return 15.0 * std::sqrt(pi) / (2.0 * (5.0 - 2.0 * omega) * (7.0 - 2.0 * omega)) * Kn;
}

}  // namespace ugkwp
