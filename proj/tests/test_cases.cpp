#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dgmg/cases.hpp"

using namespace dgmg;

TEST_CASE("inertia gravity setup")
{
    const CaseSetup cs = inertia_gravity();
    const auto& atm = dynamic_cast<const StratifiedAtmosphere&>(*cs.atmosphere);
    CHECK(atm.scale_height() == doctest::Approx(98066.5).epsilon(1e-12));
    CHECK(cs.theta_pert(100000.0, 5000.0) == doctest::Approx(0.01).epsilon(1e-14));
    for (double x : {0.0, 50000.0, 100000.0, 300000.0}) CHECK(cs.theta_pert(x, 0.0) == 0.0);
    CHECK(cs.constants.cp == 1005.0);
    CHECK(cs.constants.R() > 0.0);
    CHECK(cs.boundary.periodic_x());
    CHECK_FALSE(cs.boundary.periodic_z());
    CHECK(atm.wind() == 20.0);
    CHECK(atm.theta(0.0) == 250.0);
    CHECK(atm.temperature(0.0) == doctest::Approx(250.0).epsilon(1e-14));
}

TEST_CASE("rising bubble setup")
{
    const CaseSetup cs = rising_bubble();
    CHECK(cs.theta_pert(500.0, 520.0) == 0.5);
    CHECK(cs.theta_pert(500.0, 520.0 + 49.0) == 0.5);
    CHECK(cs.theta_pert(500.0 + 350.0, 520.0) == doctest::Approx(0.5 * std::exp(-9.0)));
    CHECK(cs.theta_pert(500.0 + 350.001, 520.0) == 0.0);
    CHECK(cs.atmosphere->theta(0.0) == 303.15);
    CHECK(cs.atmosphere->theta(1500.0) == 303.15);
    CHECK(cs.constants.mu == 0.0);
}

TEST_CASE("density current setup")
{
    const CaseSetup cs = density_current();
    CHECK(cs.theta_pert(0.0, 3000.0) == doctest::Approx(-15.0));
    CHECK(cs.theta_pert(4000.0, 3000.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(cs.theta_pert(2000.0, 3000.0) == doctest::Approx(-7.5));
    CHECK(cs.theta_pert(9000.0, 3000.0) == 0.0);
    CHECK(cs.constants.mu == 75.0);
    CHECK(cs.constants.cp == 1004.0);
    CHECK(cs.constants.cv == 717.0);
    CHECK(cs.constants.g == 9.81);
}

TEST_CASE("backgrounds are hydrostatic and consistent with the equation of state")
{
    for (const char* name : {"inertia-gravity", "rising-bubble", "density-current"}) {
        CAPTURE(name);
        const CaseSetup cs = case_by_name(name);
        const auto& atm = *cs.atmosphere;
        const auto& c = cs.constants;
        CHECK(atm.pressure(0.0) == doctest::Approx(c.p0).epsilon(1e-15));
        for (double z = 100.0; z < cs.domain.z_max; z += cs.domain.height() / 7) {
            const double h = 1.0;
            const double dpdz = (atm.pressure(z + h) - atm.pressure(z - h)) / (2 * h);
            const double rho = atm.density(z, 0.0);
            CHECK(dpdz == doctest::Approx(-rho * c.g).epsilon(1e-6));

            const BackgroundPoint bp = atm.at(0.0, z);
            CHECK(pressure(bp.U, c) == doctest::Approx(atm.pressure(z)).epsilon(1e-12));
            CHECK(bp.prim.theta == doctest::Approx(atm.theta(z)).epsilon(1e-14));
            const double dth = (atm.theta(z + h) - atm.theta(z - h)) / (2 * h);
            CHECK(atm.dtheta_dz(z) == doctest::Approx(dth).epsilon(1e-6).scale(1e-12));
        }
    }
}

TEST_CASE("full states keep the background pressure")
{
    const CaseSetup cs = density_current();
    const State s = full_state(cs, 0.0, 3000.0, -15.0);
    CHECK(pressure(s, cs.constants) == doctest::Approx(cs.atmosphere->pressure(3000.0)).epsilon(1e-12));
    CHECK(s[rho_theta] / s[rho] == doctest::Approx(300.0 - 15.0));
}

TEST_CASE("initial perturbations")
{
    for (const char* name : {"inertia-gravity", "rising-bubble", "density-current"}) {
        CAPTURE(name);
        const CaseSetup cs = case_by_name(name);
        const MeshSetup m = build_hierarchy(cs.domain, 4, 4, 1, 3);
        const DgSpace sp(m.hierarchy, 1, 3);

        const Vector Z = build_initial_state(cs, sp, true);
        CHECK(Z.cwiseAbs().maxCoeff() == 0.0);

        const Vector U = build_initial_state(cs, sp);
        CHECK(U.cwiseAbs().maxCoeff() > 0.0);
        const double u_bar = cs.atmosphere->wind();
        for (int cell = 0; cell < sp.n_cells(); ++cell)
            for (int b = 0; b < 4; ++b)
                for (int a = 0; a < 4; ++a) {
                    const int node = b * 4 + a;
                    const double x = sp.node_x(cell, a), z = sp.node_z(cell, b);
                    const State up = sp.node_state(U, cell, node);
                    const double tp = cs.theta_pert(x, z);
                    // warm air is lighter at fixed pressure
                    if (tp > 0.0) CHECK(up[rho] < 0.0);
                    if (tp < 0.0) CHECK(up[rho] > 0.0);
                    // the velocity is the background wind
                    CHECK(up[rho_w] == 0.0);
                    CHECK(std::abs(up[rho_u] - up[rho] * u_bar) <= 1e-13);
                }
    }
}

TEST_CASE("unknown case names")
{
    CHECK_THROWS_AS(case_by_name("tornado"), std::invalid_argument);
}
