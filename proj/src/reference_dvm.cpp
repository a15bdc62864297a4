#include <cmath>
#include <stdexcept>

#include "ugkwp/reference_solvers.hpp"

namespace ugkwp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DvmSolver::DvmSolver(const DvmConfig& cfg) : cfg_(cfg) {
    nc_ = cfg.ncell;
    nv_ = cfg.nv;
    dx_ = (cfg.x1 - cfg.x0) / nc_;
    xc_.resize(nc_);
    for (int i = 0; i < nc_; ++i) xc_[i] = cfg.x0 + (i + 0.5) * dx_;

    // velocity grid bounds from the initial states when not given
    double vmax = cfg.vmax;
    double lam_min = 1e300;
    if (vmax <= 0.0) {
        double umax = 0.0;
        for (int i = 0; i < nc_; ++i) {
            const PrimQ q = cfg.init(xc_[i]);
            umax = std::max(umax, std::abs(q.u));
            lam_min = std::min(lam_min, 0.5 * q.rho / q.p);
        }
        vmax = umax + 6.0 / std::sqrt(lam_min);
    }
    dv_ = 2.0 * vmax / nv_;
    vmin_ = -vmax + 0.5 * dv_;
    v_.resize(nv_);
    for (int k = 0; k < nv_; ++k) v_[k] = vmin_ + k * dv_;

    h0_.assign(static_cast<size_t>(nc_) * nv_, 0.0);
    h2_.assign(static_cast<size_t>(nc_) * nv_, 0.0);
    g0_.assign(nv_, 0.0);
    g2_.assign(nv_, 0.0);

    // initialize with Maxwellians; verify discrete moments reproduce the
    // analytic ones (grid adequacy)
    init_err_ = 0.0;
    for (int i = 0; i < nc_; ++i) {
        const PrimQ q = cfg.init(xc_[i]);
        const double lam = 0.5 * q.rho / q.p;
        conservative_maxwellian(q.rho, q.u, lam, &h0_[static_cast<size_t>(i) * nv_],
                                &h2_[static_cast<size_t>(i) * nv_]);
        const PrimQ m = moments(i);
        const double E = q.p / (cfg_.gas.gamma - 1.0) + 0.5 * q.rho * q.u * q.u;
        const double Em = m.p / (cfg_.gas.gamma - 1.0) + 0.5 * m.rho * m.u * m.u;
        init_err_ = std::max(init_err_, std::abs(m.rho - q.rho) / q.rho);
        init_err_ = std::max(init_err_, std::abs(m.rho * m.u - q.rho * q.u) /
                                            std::max(q.rho * std::abs(q.u), q.rho));
        init_err_ = std::max(init_err_, std::abs(Em - E) / E);
    }
    if (init_err_ > 1e-6)
        throw std::runtime_error("dvm: velocity grid inadequate for the initial states");

    ghost_l_ = cfg.init(cfg.x0 - 0.5 * dx_);
    ghost_r_ = cfg.init(cfg.x1 + 0.5 * dx_);
}

// Analytic Maxwellian, then a few Newton corrections of (rho, U, lambda) so
// the discrete moments match exactly; keeps the relaxation conservative on
// the grid.
void DvmSolver::conservative_maxwellian(double rho, double U, double lam,
                                        double* G0, double* G2) const {
    const double K2 = cfg_.gas.K + 2.0;
    double rg = rho, ug = U, lg = lam;
    for (int it = 0; it < 8; ++it) {
        double m0 = 0.0, m1 = 0.0, m2 = 0.0;
        for (int k = 0; k < nv_; ++k) {
            const double c = v_[k] - ug;
            const double H = rg * std::sqrt(lg / kPi) * std::exp(-lg * c * c) * dv_;
            G0[k] = H / dv_;
            G2[k] = G0[k] * K2 / (2.0 * lg);
            m0 += H;
            m1 += v_[k] * H;
            m2 += 0.5 * (v_[k] * v_[k] * H + G2[k] * dv_);
        }
        const double E = rho * (0.5 * U * U + (cfg_.gas.K + 3.0) / (4.0 * lam));
        const double r0 = m0 - rho, r1 = m1 - rho * U, r2 = m2 - E;
        const double scale = rho + std::abs(rho * U) + E;
        if (std::abs(r0) + std::abs(r1) + std::abs(r2) < 1e-13 * scale) return;

        // Jacobian of the discrete moments w.r.t. (rg, ug, lg)
        double J[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        for (int k = 0; k < nv_; ++k) {
            const double c = v_[k] - ug;
            const double H = G0[k] * dv_;
            const double dr = H / rg;
            const double du = 2.0 * lg * c * H;
            const double dl = (0.5 / lg - c * c) * H;
            const double e2 = K2 / (2.0 * lg);
            J[0][0] += dr;             J[0][1] += du;             J[0][2] += dl;
            J[1][0] += v_[k] * dr;     J[1][1] += v_[k] * du;     J[1][2] += v_[k] * dl;
            J[2][0] += 0.5 * (v_[k] * v_[k] + e2) * dr;
            J[2][1] += 0.5 * (v_[k] * v_[k] + e2) * du;
            J[2][2] += 0.5 * (v_[k] * v_[k] + e2) * dl - 0.5 * H * e2 / lg;
        }
        // solve J d = -r (3x3 Cramer)
        const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                           J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                           J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
        if (std::abs(det) < 1e-300) return;
        const double b[3] = {-r0, -r1, -r2};
        auto solve = [&](int col) {
            double M[3][3];
            for (int r = 0; r < 3; ++r)
                for (int c2 = 0; c2 < 3; ++c2) M[r][c2] = J[r][c2];
            for (int r = 0; r < 3; ++r) M[r][col] = b[r];
            return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                    M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                    M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])) / det;
        };
        rg += solve(0);
        ug += solve(1);
        lg += solve(2);
        if (!(rg > 0.0) || !(lg > 0.0)) {  // fall back to the analytic fit
            rg = rho; ug = U; lg = lam;
            break;
        }
    }
    for (int k = 0; k < nv_; ++k) {
        const double c = v_[k] - ug;
        G0[k] = rg * std::sqrt(lg / kPi) * std::exp(-lg * c * c);
        G2[k] = G0[k] * K2 / (2.0 * lg);
    }
}

PrimQ DvmSolver::moments(int i) const {
    const double* h0 = &h0_[static_cast<size_t>(i) * nv_];
    const double* h2 = &h2_[static_cast<size_t>(i) * nv_];
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int k = 0; k < nv_; ++k) {
        m0 += h0[k];
        m1 += v_[k] * h0[k];
        m2 += 0.5 * (v_[k] * v_[k] * h0[k] + h2[k]);
    }
    m0 *= dv_;
    m1 *= dv_;
    m2 *= dv_;
    PrimQ q;
    q.rho = m0;
    q.u = m1 / m0;
    const double eint = m2 - 0.5 * m1 * m1 / m0;
    q.p = 2.0 * eint / (cfg_.gas.K + 3.0);
    return q;
}

double DvmSolver::temperature(int i) const {
    const PrimQ q = moments(i);
    return q.p / q.rho;
}

double DvmSolver::total_mass() const {
    double s = 0.0;
    for (int i = 0; i < nc_; ++i) s += moments(i).rho * dx_;
    return s;
}

double DvmSolver::total_momentum() const {
    double s = 0.0;
    for (int i = 0; i < nc_; ++i) {
        const PrimQ q = moments(i);
        s += q.rho * q.u * dx_;
    }
    return s;
}

double DvmSolver::total_energy() const {
    double s = 0.0;
    for (int i = 0; i < nc_; ++i) {
        const PrimQ q = moments(i);
        s += (q.p * (cfg_.gas.K + 3.0) / 2.0 + 0.5 * q.rho * q.u * q.u) * dx_;
    }
    return s;
}

double DvmSolver::suggest_dt() const {
    const double vmax = std::max(std::abs(v_.front()), std::abs(v_.back()));
    double tau_min = 1e300;
    for (int i = 0; i < nc_; ++i) {
        const PrimQ q = moments(i);
        Primitive prim;
        prim.rho = q.rho;
        prim.U = {q.u, 0, 0};
        prim.lambda = 0.5 * q.rho / q.p;
        prim.p = q.p;
        tau_min = std::min(tau_min, relaxation_time(prim, cfg_.gas));
    }
    return std::min(cfg_.cfl * dx_ / vmax, 0.5 * tau_min);
}

void DvmSolver::step(double dt) {
    const size_t n = static_cast<size_t>(nc_) * nv_;
    static thread_local std::vector<double> f0new, f2new;
    f0new.assign(n, 0.0);
    f2new.assign(n, 0.0);

    // ghost distributions (fixed reservoirs or periodic wrap)
    std::vector<double> gl0(nv_), gl2(nv_), gr0(nv_), gr2(nv_);
    if (!cfg_.periodic) {
        conservative_maxwellian(ghost_l_.rho, ghost_l_.u, 0.5 * ghost_l_.rho / ghost_l_.p,
                                gl0.data(), gl2.data());
        conservative_maxwellian(ghost_r_.rho, ghost_r_.u, 0.5 * ghost_r_.rho / ghost_r_.p,
                                gr0.data(), gr2.data());
    }

    const double cdt = dt / dx_;
    for (int i = 0; i < nc_; ++i) {
        const double* h0c = &h0_[static_cast<size_t>(i) * nv_];
        const double* h2c = &h2_[static_cast<size_t>(i) * nv_];
        const double* h0m = i > 0 ? &h0_[static_cast<size_t>(i - 1) * nv_]
                     : cfg_.periodic ? &h0_[static_cast<size_t>(nc_ - 1) * nv_]
                                     : gl0.data();
        const double* h2m = i > 0 ? &h2_[static_cast<size_t>(i - 1) * nv_]
                     : cfg_.periodic ? &h2_[static_cast<size_t>(nc_ - 1) * nv_]
                                     : gl2.data();
        const double* h0p = i + 1 < nc_ ? &h0_[static_cast<size_t>(i + 1) * nv_]
                     : cfg_.periodic ? &h0_[0]
                                     : gr0.data();
        const double* h2p = i + 1 < nc_ ? &h2_[static_cast<size_t>(i + 1) * nv_]
                     : cfg_.periodic ? &h2_[0]
                                     : gr2.data();
        double* o0 = &f0new[static_cast<size_t>(i) * nv_];
        double* o2 = &f2new[static_cast<size_t>(i) * nv_];
        for (int k = 0; k < nv_; ++k) {
            const double vp = std::max(v_[k], 0.0), vm = std::min(v_[k], 0.0);
            o0[k] = h0c[k] - cdt * (vp * (h0c[k] - h0m[k]) + vm * (h0p[k] - h0c[k]));
            o2[k] = h2c[k] - cdt * (vp * (h2c[k] - h2m[k]) + vm * (h2p[k] - h2c[k]));
        }
    }
    h0_.swap(f0new);
    h2_.swap(f2new);

    // BGK relaxation with the conservative discrete Maxwellian
    for (int i = 0; i < nc_; ++i) {
        const PrimQ q = moments(i);
        const double lam = 0.5 * q.rho / q.p;
        Primitive prim;
        prim.rho = q.rho;
        prim.U = {q.u, 0, 0};
        prim.lambda = lam;
        prim.p = q.p;
        const double tau = relaxation_time(prim, cfg_.gas);
        conservative_maxwellian(q.rho, q.u, lam, g0_.data(), g2_.data());
        double* h0 = &h0_[static_cast<size_t>(i) * nv_];
        double* h2 = &h2_[static_cast<size_t>(i) * nv_];
        const double r = dt / tau;
        for (int k = 0; k < nv_; ++k) {
            h0[k] += r * (g0_[k] - h0[k]);
            h2[k] += r * (g2_[k] - h2[k]);
        }
    }
    time_ += dt;
}

void DvmSolver::run_until(double t_end) {
    while (time_ < t_end - 1e-14) {
        double dt = suggest_dt();
        if (time_ + dt > t_end) dt = t_end - time_;
        step(dt);
    }
}

}  // namespace ugkwp
