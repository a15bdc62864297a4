// Closed-form full and half-space moments of the Maxwellian, contractions of
// expansion coefficients against the conservative basis
// psi = (1, u, v, w, (u^2+v^2+w^2+xi^2)/2), and the coefficient solves for the
// interface distribution expansion.
#pragma once

#include "ugkwp/gas_model.hpp"

namespace ugkwp {

constexpr int kMomentOrder = 8;  // highest velocity power tabulated

enum class Half { full, positive, negative };

// All moments are normalized by density: <u^0> over the full space is 1.
// The u-axis carries half-space tables (complementary error function closed
// forms); v and w only need full-space tables; xi[m] stores <xi^(2m)>.
struct MomentTable {
    double u_full[kMomentOrder + 1];
    double u_pos[kMomentOrder + 1];
    double u_neg[kMomentOrder + 1];
    double v_full[kMomentOrder + 1];
    double w_full[kMomentOrder + 1];
    double xi[3];

    double u(int n, Half h) const {
        return h == Half::full ? u_full[n] : (h == Half::positive ? u_pos[n] : u_neg[n]);
    }
    // <u^i v^j w^k xi^(2m)> on the requested u half-space
    double uvw(int i, int j, int k, int m, Half h) const {
        return u(i, h) * v_full[j] * w_full[k] * xi[m];
    }
};

MomentTable maxwell_moments(const Primitive& prim, const GasModel& gas,
                            int max_order = 6);

// <u^i v^j w^k psi> as a 5-vector (normalized by density).
Vec5 psi_moment(const MomentTable& m, int i, int j, int k, Half h);

// <(s.psi) u^i v^j w^k psi> as a 5-vector (normalized by density).
Vec5 contract_psi(const MomentTable& m, const Vec5& s, int i, int j, int k, Half h);

// Coefficient 5-vector a with  integral( (a.psi) psi g ) dXi = dW,
// i.e. the micro-slope solve for a given macroscopic slope.
Vec5 a_from_slope(const Primitive& prim, const Vec5& dW, const GasModel& gas);

struct ExpansionCoeffs {
    Vec5 a_l{}, a_r{}, b{}, c{}, A{};
};

// Time slope of the interface macroscopic state from the compatibility
// condition: dW0/dt = -rho0 * < (a_l u H[u] + a_r u (1-H[u]) + b v + c w) psi >.
Vec5 interface_time_slope(const Vec5& a_l, const Vec5& a_r, const Vec5& b,
                          const Vec5& c, const Primitive& prim0,
                          const GasModel& gas);

// A = a_from_slope(prim0, dW0/dt) with the slope above.
Vec5 time_derivative_coeff(const Vec5& a_l, const Vec5& a_r, const Vec5& b,
                           const Vec5& c, const Primitive& prim0,
                           const GasModel& gas);

}  // namespace ugkwp
