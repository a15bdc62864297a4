#include <doctest.h>

#include <cmath>

#include "quadrature.hpp"
#include "ugkwp/reference_solvers.hpp"

using namespace ugkwp;

TEST_CASE("rankine-hugoniot jumps") {
    SUBCASE("strong shock limit") {
        const ShockJump j = rankine_hugoniot(1e6, 5.0 / 3.0);
        CHECK(j.rho_ratio == doctest::Approx(4.0).epsilon(1e-9));
    }
    SUBCASE("sonic continuity") {
        const ShockJump j = rankine_hugoniot(1.0 + 1e-12, 5.0 / 3.0);
        CHECK(j.rho_ratio == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(j.p_ratio == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_THROWS(rankine_hugoniot(0.99, 5.0 / 3.0));
    }
    SUBCASE("M = 8 monatomic values") {
        const ShockJump j = rankine_hugoniot(8.0, 5.0 / 3.0);
        CHECK(j.rho_ratio == doctest::Approx(3.8209).epsilon(1e-4));
        CHECK(j.p_ratio == doctest::Approx(79.75).epsilon(1e-4));
    }
    SUBCASE("jump conditions close") {
        for (const double M : {1.5, 2.0, 8.0, 10.0}) {
            const double g = 5.0 / 3.0;
            const ShockJump j = rankine_hugoniot(M, g);
            const double rho1 = 1.0, p1 = 1.0;
            const double c1 = std::sqrt(g * p1 / rho1);
            const double u1 = M * c1;
            const double rho2 = rho1 * j.rho_ratio;
            const double p2 = p1 * j.p_ratio;
            const double u2 = u1 * j.u2_over_u1;
            CHECK(rho1 * u1 == doctest::Approx(rho2 * u2).epsilon(1e-12));
            CHECK(rho1 * u1 * u1 + p1 ==
                  doctest::Approx(rho2 * u2 * u2 + p2).epsilon(1e-12));
            const double h1 = g / (g - 1.0) * p1 / rho1 + 0.5 * u1 * u1;
            const double h2 = g / (g - 1.0) * p2 / rho2 + 0.5 * u2 * u2;
            CHECK(h1 == doctest::Approx(h2).epsilon(1e-12));
        }
    }
}

namespace {

// piecewise integration of the self-similar solution over [-L, L] at time t,
// split at the wave boundaries so each panel is smooth
Vec5 integral_of_solution(const RiemannSolution& sol, double L, double t,
                          double gamma) {
    auto wvec = [&](const PrimQ& q) {
        const double E = q.p / (gamma - 1.0) + 0.5 * q.rho * q.u * q.u;
        return Vec5{q.rho, q.rho * q.u, 0.0, 0.0, E};
    };
    const double g = gamma;
    const double al = std::sqrt(g * sol.left.p / sol.left.rho);
    const double ar = std::sqrt(g * sol.right.p / sol.right.rho);
    std::vector<double> xi{-L / t};
    if (sol.p_star > sol.left.p) {
        xi.push_back(sol.left.u - al * std::sqrt((g + 1.0) / (2.0 * g) *
                                                     sol.p_star / sol.left.p +
                                                 (g - 1.0) / (2.0 * g)));
    } else {
        const double as = al * std::pow(sol.p_star / sol.left.p, (g - 1.0) / (2.0 * g));
        xi.push_back(sol.left.u - al);
        xi.push_back(sol.u_star - as);
    }
    xi.push_back(sol.u_star);
    if (sol.p_star > sol.right.p) {
        xi.push_back(sol.right.u + ar * std::sqrt((g + 1.0) / (2.0 * g) *
                                                      sol.p_star / sol.right.p +
                                                  (g - 1.0) / (2.0 * g)));
    } else {
        const double as = ar * std::pow(sol.p_star / sol.right.p, (g - 1.0) / (2.0 * g));
        xi.push_back(sol.u_star + as);
        xi.push_back(sol.right.u + ar);
    }
    xi.push_back(L / t);

    Vec5 total{};
    for (size_t seg = 0; seg + 1 < xi.size(); ++seg) {
        const double x0 = xi[seg] * t, x1 = xi[seg + 1] * t;
        if (!(x1 > x0)) continue;
        const double eps = 1e-10 * (x1 - x0);
        for (int q : {0, 1, 4}) {
            auto f = [&](double x) { return wvec(sol.sample(x / t))[q]; };
            total[q] += testq::adaptive(f, x0 + eps, x1 - eps, 1e-13) +
                        eps * (f(x0 + eps) + f(x1 - eps));
        }
    }
    return total;
}

}  // namespace

TEST_CASE("exact riemann solver") {
    const double g = 5.0 / 3.0;

    SUBCASE("identical states stay uniform") {
        const PrimQ q{1.0, 0.3, 2.0};
        const RiemannSolution sol = exact_riemann(q, q, g);
        CHECK(sol.p_star == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(sol.u_star == doctest::Approx(0.3).epsilon(1e-12));
        const PrimQ s = sol.sample(0.1);
        CHECK(s.rho == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("Sod star pressure against a bisection oracle") {
        const PrimQ l{1.0, 0.0, 1.0}, r{0.125, 0.0, 0.1};
        const RiemannSolution sol = exact_riemann(l, r, g);

        // independent bisection on the pressure function
        auto fK = [&](double p, const PrimQ& s) {
            const double a = std::sqrt(g * s.p / s.rho);
            if (p > s.p) {
                const double A = 2.0 / ((g + 1.0) * s.rho);
                const double B = (g - 1.0) / (g + 1.0) * s.p;
                return (p - s.p) * std::sqrt(A / (p + B));
            }
            return 2.0 * a / (g - 1.0) *
                   (std::pow(p / s.p, (g - 1.0) / (2.0 * g)) - 1.0);
        };
        double lo = 1e-8, hi = 10.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double f = fK(mid, l) + fK(mid, r) + (r.u - l.u);
            (f > 0.0 ? hi : lo) = mid;
        }
        CHECK(sol.p_star == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
    }

    SUBCASE("a Rankine-Hugoniot pair is recovered as a single shock") {
        const double M = 2.0;
        const ShockJump j = rankine_hugoniot(M, g);
        const double u1 = M * std::sqrt(g);
        const PrimQ up{1.0, u1, 1.0};
        const PrimQ down{j.rho_ratio, u1 * j.u2_over_u1, j.p_ratio};
        const RiemannSolution sol = exact_riemann(up, down, g);
        CHECK(sol.p_star == doctest::Approx(down.p).epsilon(1e-9));
        CHECK(sol.u_star == doctest::Approx(down.u).epsilon(1e-9));
    }

    SUBCASE("vacuum-generating data takes the vacuum branch") {
        const PrimQ l{1.0, -10.0, 0.01}, r{1.0, 10.0, 0.01};
        const RiemannSolution sol = exact_riemann(l, r, g);
        CHECK(sol.vacuum);
        CHECK(sol.sample(0.0).rho == 0.0);
    }

    SUBCASE("integral form of the conservation laws") {
        const PrimQ l{1.0, 0.0, 1.0}, r{0.125, 0.0, 0.1};
        const RiemannSolution sol = exact_riemann(l, r, g);
        const double t = 0.2, L = 2.0;
        const Vec5 after = integral_of_solution(sol, L, t, g);
        auto flux = [&](const PrimQ& q) {
            const double E = q.p / (g - 1.0) + 0.5 * q.rho * q.u * q.u;
            return Vec5{q.rho * q.u, q.rho * q.u * q.u + q.p, 0.0, 0.0,
                        q.u * (E + q.p)};
        };
        Vec5 before{};
        before[0] = L * l.rho + L * r.rho;
        before[1] = L * l.rho * l.u + L * r.rho * r.u;
        before[4] = L * (l.p / (g - 1.0) + 0.5 * l.rho * l.u * l.u) +
                    L * (r.p / (g - 1.0) + 0.5 * r.rho * r.u * r.u);
        const Vec5 expected = before + t * (flux(l) - flux(r));
        for (const int q : {0, 1, 4})
            CHECK(std::abs(after[q] - expected[q]) <=
                  1e-8 * (std::abs(expected[q]) + 1.0));
    }
}

TEST_CASE("dvm oracle") {
    GasModel gas = GasModel::make(0, 0.81, mu_ref_from_knudsen(0.1, 0.81), 1.0);

    SUBCASE("grid adequacy on the default setup") {
        DvmConfig cfg;
        cfg.ncell = 50;
        cfg.gas = gas;
        cfg.init = [](double x) {
            return x < 0.0 ? PrimQ{1.0, 0.0, 1.0} : PrimQ{0.125, 0.0, 0.1};
        };
        DvmSolver solver(cfg);
        CHECK(solver.init_moment_error() < 1e-8);
    }

    SUBCASE("homogeneous relaxation toward the Maxwellian") {
        // bimodal initial distribution in a single periodic cell
        DvmConfig cfg;
        cfg.ncell = 1;
        cfg.periodic = true;
        cfg.nv = 201;
        cfg.vmax = 10.0;
        cfg.gas = GasModel::make(0, 0.81, 0.5, 1.0, ViscosityLaw::constant);
        cfg.init = [](double) { return PrimQ{1.0, 0.0, 1.0}; };
        DvmSolver solver(cfg);
        const double pi = 3.14159265358979323846;
        for (int k = 0; k < 201; ++k) {
            const double v = solver.vgrid()[k];
            const double lam = 2.0;
            const double g1 = 0.5 * std::sqrt(lam / pi) *
                              (std::exp(-lam * (v - 1.0) * (v - 1.0)) +
                               std::exp(-lam * (v + 1.0) * (v + 1.0)));
            solver.h0(0, k) = g1;
            solver.h2(0, k) = g1 / lam;  // (K+2)/(2 lam) with K = 0
        }
        const PrimQ q0 = solver.moments(0);
        Primitive prim;
        prim.rho = q0.rho;
        prim.U = {q0.u, 0, 0};
        prim.lambda = 0.5 * q0.rho / q0.p;
        prim.p = q0.p;
        const double tau = relaxation_time(prim, cfg.gas);

        // distance to equilibrium decays as exp(-t/tau)
        auto distance = [&]() {
            const PrimQ q = solver.moments(0);
            const double lam = 0.5 * q.rho / q.p;
            double d = 0.0;
            for (int k = 0; k < 201; ++k) {
                const double v = solver.vgrid()[k];
                const double geq = q.rho * std::sqrt(lam / pi) *
                                   std::exp(-lam * (v - q.u) * (v - q.u));
                d += std::abs(solver.h0(0, k) - geq) * solver.dv();
            }
            return d;
        };
        const double d0 = distance();
        const double T = 0.5 * tau;
        int nstep = 2000;
        for (int k = 0; k < nstep; ++k) solver.step(T / nstep);
        const double d1 = distance();
        CHECK(d1 / d0 == doctest::Approx(std::exp(-0.5)).epsilon(0.01));
    }

    SUBCASE("free streaming advects a single-velocity pulse exactly") {
        // pulse on top of a uniform background; collisions switched off by a
        // huge constant viscosity
        DvmConfig cfg;
        cfg.ncell = 16;
        cfg.x0 = 0.0;
        cfg.x1 = 1.0;
        cfg.periodic = true;
        cfg.nv = 11;
        cfg.vmax = 2.0;
        cfg.gas = GasModel::make(0, 0.81, 1e12, 1.0, ViscosityLaw::constant);
        cfg.init = [](double) { return PrimQ{1.0, 0.0, 1.0}; };
        DvmSolver solver(cfg);
        const int kv = 8;  // some positive grid velocity
        const double v = solver.vgrid()[kv];
        REQUIRE(v > 0.0);
        const double base = solver.h0(5, kv);
        solver.h0(3, kv) += 1.0;
        const double dx = 1.0 / 16;
        const double dt = dx / v;  // unit CFL for this velocity
        for (int s = 0; s < 5; ++s) solver.step(dt);
        for (int i = 0; i < 16; ++i)
            CHECK(solver.h0(i, kv) - base ==
                  doctest::Approx(i == 8 ? 1.0 : 0.0).epsilon(1e-9));
    }

    SUBCASE("periodic conservation") {
        DvmConfig cfg;
        cfg.ncell = 32;
        cfg.x0 = 0.0;
        cfg.x1 = 1.0;
        cfg.periodic = true;
        cfg.gas = gas;
        cfg.init = [](double x) {
            return PrimQ{1.0 + 0.3 * std::sin(2.0 * 3.14159265358979 * x), 0.1, 1.0};
        };
        DvmSolver solver(cfg);
        const double m0 = solver.total_mass();
        const double mom0 = solver.total_momentum();
        const double e0 = solver.total_energy();
        solver.run_until(0.05);
        CHECK(std::abs(solver.total_mass() - m0) <= 1e-10 * m0);
        CHECK(std::abs(solver.total_momentum() - mom0) <= 1e-10 * (std::abs(mom0) + 1.0));
        CHECK(std::abs(solver.total_energy() - e0) <= 1e-10 * e0);
    }
}

TEST_CASE("blasius profile") {
    std::vector<double> eta;
    for (int k = 0; k <= 100; ++k) eta.push_back(0.1 * k);
    const BlasiusProfile b = blasius_profile(eta);

    CHECK(b.f[0] == 0.0);
    CHECK(b.fp[0] == 0.0);
    CHECK(b.fp.back() == doctest::Approx(1.0).epsilon(1e-7));
    // monotone approach to the free stream
    for (size_t k = 1; k < b.fp.size(); ++k) CHECK(b.fp[k] >= b.fp[k - 1] - 1e-12);
    // recomputed wall curvature lands in the expected window
    CHECK(b.fpp0 == doctest::Approx(0.33206).epsilon(5e-4));
    // value is converged in the integrator step (self-consistency)
    const BlasiusProfile b2 = blasius_profile({5.0});
    CHECK(b2.fpp0 == doctest::Approx(b.fpp0).epsilon(1e-9));
}
