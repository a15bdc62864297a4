#include <doctest.h>

#include <cmath>

#include "ugkwp/gas_model.hpp"
#include "ugkwp/rng.hpp"

using namespace ugkwp;

TEST_CASE("primitive conversion on reference states") {
    const GasModel gas = GasModel::make(0, 0.81, 1.0, 1.0);

    MacroState W{1.0, {0.0, 0.0, 0.0}, 1.0};
    Primitive prim = to_primitive(W, gas);
    CHECK(prim.rho == doctest::Approx(1.0));
    CHECK(prim.U[0] == 0.0);
    CHECK(prim.lambda == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(prim.p == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    // zero momentum stays exactly zero
    MacroState Wz{2.5, {0.0, 0.0, 0.0}, 3.0};
    CHECK(to_primitive(Wz, gas).U[0] == 0.0);

    MacroState Wr{0.125, {0.0, 0.0, 0.0}, 0.25};
    CHECK(to_primitive(Wr, gas).lambda == doctest::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("round trip to_conservative / to_primitive") {
    RngStream rng(7, 0);
    for (int K : {0, 1, 2, 3}) {
        const GasModel gas = GasModel::make(K, 0.81, 1.0, 1.0);
        for (int it = 0; it < 200; ++it) {
            Primitive prim;
            prim.rho = 0.05 + 3.0 * rng.u01();
            prim.U = {4.0 * (rng.u01() - 0.5), 4.0 * (rng.u01() - 0.5),
                      4.0 * (rng.u01() - 0.5)};
            prim.lambda = 0.1 + 5.0 * rng.u01();
            prim.p = prim.rho / (2.0 * prim.lambda);
            const Primitive back = to_primitive(to_conservative(prim, gas), gas);
            CHECK(back.rho == doctest::Approx(prim.rho).epsilon(1e-14));
            for (int d = 0; d < 3; ++d)
                CHECK(back.U[d] == doctest::Approx(prim.U[d]).epsilon(1e-13));
            CHECK(back.lambda == doctest::Approx(prim.lambda).epsilon(1e-13));
            CHECK(back.p == doctest::Approx(prim.p).epsilon(1e-13));
        }
    }
}

TEST_CASE("unphysical states signal") {
    const GasModel gas = GasModel::make(0, 0.81, 1.0, 1.0);
    CHECK_THROWS_AS(to_primitive(MacroState{-1.0, {0, 0, 0}, 1.0}, gas),
                    unphysical_error);
    // energy below kinetic
    CHECK_THROWS_AS(to_primitive(MacroState{1.0, {2.0, 0, 0}, 1.0}, gas),
                    unphysical_error);
    CHECK_THROWS_AS(viscosity(-1.0, gas), unphysical_error);
}

TEST_CASE("viscosity law") {
    const double pi = 3.14159265358979323846;
    const double mu = mu_ref_from_knudsen(0.1, 0.81);
    CHECK(mu == doctest::Approx(15.0 * std::sqrt(pi) / (2.0 * 3.38 * 5.38) * 0.1)
                    .epsilon(1e-12));
    CHECK(mu == doctest::Approx(0.07310).epsilon(2e-4));

    const GasModel gas = GasModel::make(0, 0.81, mu, 1.0);
    CHECK(viscosity(1.0, gas) == doctest::Approx(mu).epsilon(1e-14));

    const GasModel lin = GasModel::make(0, 1.0, mu, 1.0);
    CHECK(viscosity(4.0, lin) == doctest::Approx(4.0 * mu).epsilon(1e-13));

    const GasModel cst = GasModel::make(0, 0.81, 2.5, 1.0, ViscosityLaw::constant);
    CHECK(viscosity(17.0, cst) == doctest::Approx(2.5));
}

TEST_CASE("relaxation time") {
    const GasModel gas = GasModel::make(0, 0.81, 0.1, 1.0);
    Primitive prim;
    prim.rho = 1.0;
    prim.lambda = 0.5;  // T = 1
    prim.p = 0.5;
    CHECK(relaxation_time(prim, gas) == doctest::Approx(0.2).epsilon(1e-14));

    // Sod left state: rho = 1, p = 1, T = 1
    const GasModel sod = GasModel::make(0, 0.81, mu_ref_from_knudsen(0.1, 0.81), 1.0);
    Primitive left;
    left.rho = 1.0;
    left.lambda = 0.5;
    left.p = 1.0;
    CHECK(relaxation_time(left, sod) == doctest::Approx(0.0731).epsilon(2e-3));

    // strictly decreasing in p at fixed temperature
    RngStream rng(3, 0);
    for (int it = 0; it < 100; ++it) {
        const double lam = 0.2 + rng.u01();
        Primitive a, b;
        a.lambda = b.lambda = lam;
        a.p = 0.1 + rng.u01();
        b.p = a.p * (1.0 + rng.u01() + 1e-3);
        a.rho = 2.0 * lam * a.p;
        b.rho = 2.0 * lam * b.p;
        CHECK(relaxation_time(b, sod) < relaxation_time(a, sod));
    }

    // halving: doubling p at fixed mu halves tau
    Primitive dbl = prim;
    dbl.p = 2.0 * prim.p;
    dbl.rho = 2.0 * prim.rho;  // same T
    CHECK(relaxation_time(dbl, gas) ==
          doctest::Approx(0.5 * relaxation_time(prim, gas)).epsilon(1e-13));
}

TEST_CASE("gamma consistency") {
    for (int K : {0, 1, 2, 3, 5}) {
        const GasModel gas = GasModel::make(K, 0.81, 1.0, 1.0);
        CHECK(gas.gamma == doctest::Approx((K + 5.0) / (K + 3.0)).epsilon(1e-15));
    }
    CHECK_THROWS(GasModel::make(0, 0.3, 1.0, 1.0));
    CHECK_THROWS(GasModel::make(0, 0.81, -1.0, 1.0));
}
