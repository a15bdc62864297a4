#include <cmath>

#include "ugkwp/reference_solvers.hpp"

namespace ugkwp {

namespace {

// y = (f, f', f''); f''' = -f f''/2
void rhs(const double y[3], double dy[3]) {
    dy[0] = y[1];
    dy[1] = y[2];
    dy[2] = -0.5 * y[0] * y[2];
}

void rk4_step(double y[3], double h) {
    double k1[3], k2[3], k3[3], k4[3], t[3];
    rhs(y, k1);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k1[i];
    rhs(t, k2);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k2[i];
    rhs(t, k3);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + h * k3[i];
    rhs(t, k4);
    for (int i = 0; i < 3; ++i)
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// f'(eta_max) for a trial wall curvature
double shoot(double fpp0, double eta_max, double h) {
    double y[3] = {0.0, 0.0, fpp0};
    const long n = static_cast<long>(std::ceil(eta_max / h));
    const double hh = eta_max / n;
    for (long i = 0; i < n; ++i) rk4_step(y, hh);
    return y[1];
}

}  // namespace

BlasiusProfile blasius_profile(const std::vector<double>& eta_grid) {
    const double eta_max = 12.0;
    const double h = 1e-3;

    // secant iteration on f''(0) with f'(eta_max) -> 1
    double a = 0.2, b = 0.5;
    double fa = shoot(a, eta_max, h) - 1.0;
    double fb = shoot(b, eta_max, h) - 1.0;
    for (int it = 0; it < 100 && std::abs(b - a) > 1e-12; ++it) {
        const double c = b - fb * (b - a) / (fb - fa);
        a = b;
        fa = fb;
        b = c;
        fb = shoot(b, eta_max, h) - 1.0;
        if (std::abs(fb) < 1e-10) break;
    }

    BlasiusProfile out;
    out.fpp0 = b;
    out.eta = eta_grid;
    out.f.resize(eta_grid.size());
    out.fp.resize(eta_grid.size());
    out.fpp.resize(eta_grid.size());

    double y[3] = {0.0, 0.0, b};
    double eta = 0.0;
    for (size_t i = 0; i < eta_grid.size(); ++i) {
        const double target = eta_grid[i];
        while (eta + h <= target) {
            rk4_step(y, h);
            eta += h;
        }
        if (target > eta) {
            double yt[3] = {y[0], y[1], y[2]};
            rk4_step(yt, target - eta);
            out.f[i] = yt[0];
            out.fp[i] = yt[1];
            out.fpp[i] = yt[2];
        } else {
            out.f[i] = y[0];
            out.fp[i] = y[1];
            out.fpp[i] = y[2];
        }
    }
    // beyond the integration window the profile is its free-stream asymptote
    for (size_t i = 0; i < eta_grid.size(); ++i) {
        if (eta_grid[i] > eta_max) {
            out.fp[i] = 1.0;
            out.fpp[i] = 0.0;
        }
    }
    return out;
}

}  // namespace ugkwp
