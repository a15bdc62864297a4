#include "ugkwp/moments.hpp"

#include <cmath>

namespace ugkwp {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Gaussian recursion <u^{n+1}> = U <u^n> + n <u^{n-1}> / (2 lambda); the same
// recursion holds for the half-space tables once the first two entries carry
// the erfc / exp boundary terms.
void axis_moments(double U, double lambda, double* full, double* pos, double* neg) {
    const double sql = std::sqrt(lambda);
    full[0] = 1.0;
    full[1] = U;
    if (pos) {
        pos[0] = 0.5 * std::erfc(-sql * U);
        neg[0] = 0.5 * std::erfc(sql * U);
        const double bdry = 0.5 * std::exp(-lambda * U * U) / std::sqrt(kPi * lambda);
        pos[1] = U * pos[0] + bdry;
        neg[1] = U * neg[0] - bdry;
    }
    for (int n = 2; n <= kMomentOrder; ++n) {
        const double c = 0.5 * (n - 1) / lambda;
        full[n] = U * full[n - 1] + c * full[n - 2];
        if (pos) {
            pos[n] = U * pos[n - 1] + c * pos[n - 2];
            neg[n] = U * neg[n - 1] + c * neg[n - 2];
        }
    }
}
}  // namespace

MomentTable maxwell_moments(const Primitive& prim, const GasModel& gas,
                            int max_order) {
    if (!(prim.lambda > 0.0))
        throw unphysical_error("maxwell_moments: invalid primitive");
    if (max_order > kMomentOrder)
        throw std::invalid_argument("maxwell_moments: order beyond table size");
    MomentTable m;
    axis_moments(prim.U[0], prim.lambda, m.u_full, m.u_pos, m.u_neg);
    axis_moments(prim.U[1], prim.lambda, m.v_full, nullptr, nullptr);
    axis_moments(prim.U[2], prim.lambda, m.w_full, nullptr, nullptr);
    m.xi[0] = 1.0;
    m.xi[1] = 0.5 * gas.K / prim.lambda;
    m.xi[2] = 0.25 * gas.K * (gas.K + 2.0) / (prim.lambda * prim.lambda);
    return m;
}

Vec5 psi_moment(const MomentTable& m, int i, int j, int k, Half h) {
    Vec5 r;
    r[0] = m.uvw(i, j, k, 0, h);
    r[1] = m.uvw(i + 1, j, k, 0, h);
    r[2] = m.uvw(i, j + 1, k, 0, h);
    r[3] = m.uvw(i, j, k + 1, 0, h);
    r[4] = 0.5 * (m.uvw(i + 2, j, k, 0, h) + m.uvw(i, j + 2, k, 0, h) +
                  m.uvw(i, j, k + 2, 0, h) + m.uvw(i, j, k, 1, h));
    return r;
}

Vec5 contract_psi(const MomentTable& m, const Vec5& s, int i, int j, int k, Half h) {
    Vec5 r = s[0] * psi_moment(m, i, j, k, h);
    r += s[1] * psi_moment(m, i + 1, j, k, h);
    r += s[2] * psi_moment(m, i, j + 1, k, h);
    r += s[3] * psi_moment(m, i, j, k + 1, h);
    // psi_5 factor: (u^2 + v^2 + w^2 + xi^2)/2
    Vec5 e = psi_moment(m, i + 2, j, k, h);
    e += psi_moment(m, i, j + 2, k, h);
    e += psi_moment(m, i, j, k + 2, h);
    // xi^2-weighted psi moments: xi^2 couples to the xi table one slot up
    Vec5 x;
    x[0] = m.uvw(i, j, k, 1, h);
    x[1] = m.uvw(i + 1, j, k, 1, h);
    x[2] = m.uvw(i, j + 1, k, 1, h);
    x[3] = m.uvw(i, j, k + 1, 1, h);
    x[4] = 0.5 * (m.uvw(i + 2, j, k, 1, h) + m.uvw(i, j + 2, k, 1, h) +
                  m.uvw(i, j, k + 2, 1, h) + m.uvw(i, j, k, 2, h));
    e += x;
    r += (0.5 * s[4]) * e;
    return r;
}

Vec5 a_from_slope(const Primitive& prim, const Vec5& dW, const GasModel& gas) {
    const double rho = prim.rho;
    const double lam = prim.lambda;
    const double K3 = gas.K + 3.0;
    const double u2 = prim.U[0] * prim.U[0] + prim.U[1] * prim.U[1] +
                      prim.U[2] * prim.U[2];
    const double w0 = dW[0] / rho;
    double R[3];
    double uR = 0.0;
    for (int d = 0; d < 3; ++d) {
        R[d] = dW[1 + d] / rho - prim.U[d] * w0;
        uR += prim.U[d] * R[d];
    }
    const double R5 = dW[4] / rho - 0.5 * (u2 + 0.5 * K3 / lam) * w0;

    Vec5 a;
    a[4] = 8.0 * lam * lam / K3 * (R5 - uR);
    double ua = 0.0;
    for (int d = 0; d < 3; ++d) {
        a[1 + d] = 2.0 * lam * R[d] - prim.U[d] * a[4];
        ua += prim.U[d] * a[1 + d];
    }
    a[0] = w0 - ua - 0.5 * a[4] * (u2 + 0.5 * K3 / lam);
    return a;
}

Vec5 interface_time_slope(const Vec5& a_l, const Vec5& a_r, const Vec5& b,
                          const Vec5& c, const Primitive& prim0,
                          const GasModel& gas) {
    const MomentTable m = maxwell_moments(prim0, gas);
    Vec5 s = contract_psi(m, a_l, 1, 0, 0, Half::positive);
    s += contract_psi(m, a_r, 1, 0, 0, Half::negative);
    s += contract_psi(m, b, 0, 1, 0, Half::full);
    s += contract_psi(m, c, 0, 0, 1, Half::full);
    return -prim0.rho * s;
}

Vec5 time_derivative_coeff(const Vec5& a_l, const Vec5& a_r, const Vec5& b,
                           const Vec5& c, const Primitive& prim0,
                           const GasModel& gas) {
    return a_from_slope(prim0, interface_time_slope(a_l, a_r, b, c, prim0, gas), gas);
}

}  // namespace ugkwp
