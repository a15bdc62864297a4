// Independent oracles for tests and acceptance runs: exact Riemann solver,
// fine-grid 1D discrete-velocity BGK solver, Rankine-Hugoniot jump evaluator,
// and the Blasius boundary-layer profile. Desk-scale, single-threaded.
#pragma once

#include <functional>
#include <vector>

#include "ugkwp/gas_model.hpp"

namespace ugkwp {

// (rho, u, p) triple for 1D oracle work
struct PrimQ {
    double rho = 0.0, u = 0.0, p = 0.0;
};

struct RiemannSolution {
    double gamma = 5.0 / 3.0;
    PrimQ left, right;
    double p_star = 0.0, u_star = 0.0;
    double rho_star_l = 0.0, rho_star_r = 0.0;
    bool vacuum = false;

    // self-similar state at xi = x/t
    PrimQ sample(double xi) const;
};

// Standard two-wave iterative solution; star pressure to 1e-12.
RiemannSolution exact_riemann(const PrimQ& left, const PrimQ& right, double gamma);

struct ShockJump {
    double rho_ratio = 1.0;  // rho2/rho1
    double p_ratio = 1.0;    // p2/p1
    double T_ratio = 1.0;    // T2/T1
    double u2_over_u1 = 1.0; // downstream/upstream speed in the shock frame
};

ShockJump rankine_hugoniot(double mach, double gamma);

// 1D reduced discrete-velocity BGK solver (first-order upwind transport,
// discretely conservative relaxation). Used as a resolved-regime oracle.
struct DvmConfig {
    int ncell = 200;
    double x0 = -0.5, x1 = 0.5;
    int nv = 201;
    double vmax = 0.0;  // 0: auto from |u|max + 6/sqrt(lambda_min)
    GasModel gas;
    double cfl = 0.9;
    bool periodic = false;  // otherwise fixed-state (reservoir) ghosts
    std::function<PrimQ(double x)> init;
};

class DvmSolver {
  public:
    explicit DvmSolver(const DvmConfig& cfg);

    void run_until(double t_end);
    void step(double dt);
    double suggest_dt() const;

    // cell-center abscissae and primitive moments
    const std::vector<double>& xc() const { return xc_; }
    PrimQ moments(int i) const;
    double temperature(int i) const;
    double total_mass() const;
    double total_momentum() const;
    double total_energy() const;
    double time() const { return time_; }
    // worst initial moment mismatch found at construction (grid adequacy)
    double init_moment_error() const { return init_err_; }

    // raw distribution access (relaxation / advection tests)
    double& h0(int i, int k) { return h0_[static_cast<size_t>(i) * nv_ + k]; }
    double& h2(int i, int k) { return h2_[static_cast<size_t>(i) * nv_ + k]; }
    const std::vector<double>& vgrid() const { return v_; }
    double dv() const { return dv_; }

  private:
    DvmConfig cfg_;
    int nc_, nv_;
    double dx_, dv_, vmin_;
    double time_ = 0.0;
    double init_err_ = 0.0;
    std::vector<double> xc_, v_;
    std::vector<double> h0_, h2_;      // [cell*nv + k]
    std::vector<double> g0_, g2_;      // scratch equilibrium
    PrimQ ghost_l_, ghost_r_;

    void conservative_maxwellian(double rho, double U, double lam, double* G0,
                                 double* G2) const;
};

struct BlasiusProfile {
    std::vector<double> eta, f, fp, fpp;
    double fpp0 = 0.0;  // shooting result at the wall
};

// Shooting solution of f''' + f f''/2 = 0, f(0)=f'(0)=0, f'(inf)=1.
BlasiusProfile blasius_profile(const std::vector<double>& eta_grid);

}  // namespace ugkwp
