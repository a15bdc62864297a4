// Deterministic ("wave") parts of the interface flux: the equilibrium
// relaxation flux F_g, the analytic free-transport flux of hydro quantities
// F_f^h, and the diffuse-wall flux. All routines work in an interface-local
// frame whose first velocity axis is the interface normal; the caller maps
// momentum components in and out.
#pragma once

#include "ugkwp/gas_model.hpp"
#include "ugkwp/moments.hpp"
#include "ugkwp/reconstruction.hpp"

namespace ugkwp {

// Exact time integrals of the flux kernels over one step.
//   q_g0   = int (1 - e^{-t/tau}) dt                    (g0 term)
//   q_gslope_* = -int [tau - e^{-t/tau}(t+tau)] dt      (spatial-slope terms)
//   q_gA   = int (t - tau + tau e^{-t/tau}) dt          (time-slope term)
//   c_h0   = int e^{-t/tau} dt
//   c_ht   = int t e^{-t/tau} dt
//   c_plus = (e^{-dt/tau}(dt+tau) - tau) / (1 - e^{-dt/tau})
// The normal and tangential slope kernels integrate to the same value; the
// printed forms that differ by one sign are reconciled by this derivation
// (see the note in the implementation).
struct TimeCoeffs {
    double dt = 0.0, tau = 0.0;
    double q_g0 = 0.0;
    double q_gslope_normal = 0.0;
    double q_gslope_tangent = 0.0;
    double q_gA = 0.0;
    double c_h0 = 0.0;
    double c_ht = 0.0;
    double c_plus = 0.0;
};

// tau below tau_floor_rel*dt is clamped and counted (diagnostics).
TimeCoeffs time_coeffs(double dt, double tau, long* tau_floor_count = nullptr,
                       double tau_floor_rel = 1e-12);

// Interface collision state W0 assembled from the half-space moments of the
// two one-sided Maxwellians.
MacroState interface_collision_state(const Primitive& pl, const Primitive& pr,
                                     const GasModel& gas);

struct EquilibriumInterface {
    Primitive prim0;
    Primitive prim_l, prim_r;  // one-sided interface states
    ExpansionCoeffs coeffs;
};

// Build W0, the one-sided equilibrium slopes a_l = a((W0 - W_cellL)/distL),
// a_r = a((W_cellR - W0)/distR), the tangential coefficient b (averaged
// tangential slopes), and A from the compatibility condition. All inputs in
// the local frame.
EquilibriumInterface build_equilibrium_interface(const InterfaceStates& st,
                                                 const GasModel& gas,
                                                 bool tangential);

// F_g per unit area, time-integrated over the step (local frame).
Vec5 flux_equilibrium(const Primitive& prim0, const ExpansionCoeffs& coeffs,
                      const TimeCoeffs& tc, const GasModel& gas);

// One-sided hydrodynamic (g+) expansion for the free-transport flux.
struct SideExpansion {
    Primitive prim;
    Vec5 a{}, b{}, c{}, A{};
    bool active = false;  // inactive sides contribute nothing
};

SideExpansion build_side_expansion(const MacroState& W, const Vec5& slope_n,
                                   const Vec5& slope_t, const GasModel& gas,
                                   bool tangential);

// F_f^h per unit area, time-integrated (local frame; left occupies u>0).
Vec5 flux_hydro_transport(const SideExpansion& left, const SideExpansion& right,
                          const TimeCoeffs& tc, const GasModel& gas);

// Diffuse-wall flux in a local frame whose u axis points from the fluid into
// the wall: outgoing half-flux from the interior one-sided state, incoming
// half-flux from a wall Maxwellian whose density zeroes the net mass flux.
// Uw_t1/Uw_t2 are the wall velocity components on the local tangent axes.
Vec5 flux_diffuse_wall(const Primitive& prim_in, double Tw, double Uw_t1,
                       double Uw_t2, double dt, const GasModel& gas);

}  // namespace ugkwp
