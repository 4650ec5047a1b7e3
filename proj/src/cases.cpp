#include "dgmg/cases.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dgmg
{

double HydrostaticAtmosphere::density(double z, double theta_pert) const
{
    const double R = c_.R();
    const double th = theta(z) + theta_pert;
    if (!(th > 0.0)) throw std::domain_error("atmosphere: non-positive potential temperature");
    return std::pow(c_.p0, R / c_.cp) * std::pow(pressure(z), 1.0 / c_.gamma()) / (R * th);
}

BackgroundPoint HydrostaticAtmosphere::at(double, double z) const
{
    PrimitiveGradient grad;
    grad.theta = {0.0, dtheta_dz(z)};
    return make_background_point(density(z, 0.0), u_bar_, 0.0, theta(z), grad, c_);
}

StratifiedAtmosphere::StratifiedAtmosphere(const PhysConstants& c, double T0, double N, double u_bar)
    : HydrostaticAtmosphere(c, u_bar), T0_(T0), H_(c.g / (N * N)), alpha_(c.g * H_ / (c.cp * T0))
{
}

double StratifiedAtmosphere::theta(double z) const { return T0_ * std::exp(z / H_); }

double StratifiedAtmosphere::dtheta_dz(double z) const { return theta(z) / H_; }

double StratifiedAtmosphere::temperature(double z) const
{
    return T0_ * (alpha_ - (alpha_ - 1.0) * std::exp(z / H_));
}

double StratifiedAtmosphere::pressure(double z) const
{
    return c_.p0 * std::exp(c_.cp / c_.R() * (std::log(temperature(z) / T0_) - z / H_));
}

NeutralAtmosphere::NeutralAtmosphere(const PhysConstants& c, double T0) : HydrostaticAtmosphere(c, 0.0), T0_(T0) {}

double NeutralAtmosphere::temperature(double z) const { return T0_ - z * c_.g / c_.cp; }

double NeutralAtmosphere::pressure(double z) const
{
    return c_.p0 * std::pow(temperature(z) / T0_, c_.cp / c_.R());
}

CaseSetup inertia_gravity()
{
    CaseSetup cs;
    cs.name = "inertia-gravity";
    cs.domain = {0.0, 300000.0, 0.0, 10000.0};
    // cp is quoted as 1.005 in the source; 1005 is the only physical reading
    cs.constants = PhysConstants{1005.0, 717.95, 9.80665, 0.0, 1.0e5};
    cs.atmosphere = std::make_shared<StratifiedAtmosphere>(cs.constants, 250.0, 0.01, 20.0);
    cs.theta_pert = [](double x, double z) {
        const double tc = 0.01, xc = 100000.0, a = 5000.0, Z = 10000.0;
        const double s = (x - xc) / a;
        return tc / (1.0 + s * s) * std::sin(std::numbers::pi * z / Z);
    };
    cs.boundary = {BoundaryKind::periodic, BoundaryKind::periodic, BoundaryKind::slip, BoundaryKind::slip};
    cs.t_final = 3000.0;
    cs.base_nx = 160;
    cs.base_nz = 5;
    cs.dg_level = 1;
    cs.dt = 25.0;
    return cs;
}

CaseSetup rising_bubble()
{
    CaseSetup cs;
    cs.name = "rising-bubble";
    cs.domain = {0.0, 1000.0, 0.0, 2000.0};
    cs.constants = PhysConstants{1005.0, 717.95, 9.80665, 0.0, 1.0e5};
    cs.atmosphere = std::make_shared<NeutralAtmosphere>(cs.constants, 303.15);
    cs.theta_pert = [](double x, double z) {
        const double A0 = 0.5, x0 = 500.0, z0 = 520.0, a = 50.0, s = 100.0;
        const double r = std::hypot(x - x0, z - z0);
        if (r < a) return A0;
        if (r - a <= 3.0 * s) return A0 * std::exp(-(r - a) * (r - a) / (s * s));
        return 0.0;
    };
    cs.boundary = {};
    cs.t_final = 1200.0;
    cs.base_nx = 10;
    cs.base_nz = 20;
    cs.dg_level = 2;
    cs.dt = 1.0;
    return cs;
}

CaseSetup density_current()
{
    CaseSetup cs;
    cs.name = "density-current";
    cs.domain = {0.0, 25600.0, 0.0, 6400.0};
    cs.constants = PhysConstants{1004.0, 717.0, 9.81, 75.0, 1.0e5};
    cs.atmosphere = std::make_shared<NeutralAtmosphere>(cs.constants, 300.0);
    cs.theta_pert = [](double x, double z) {
        const double tc = -15.0, xc = 0.0, zc = 3000.0, xr = 4000.0, zr = 2000.0;
        const double r = std::hypot((x - xc) / xr, (z - zc) / zr);
        return r < 1.0 ? 0.5 * tc * (1.0 + std::cos(std::numbers::pi * r)) : 0.0;
    };
    cs.boundary = {};
    cs.t_final = 900.0;
    cs.base_nx = 20;
    cs.base_nz = 5;
    cs.dg_level = 2;
    cs.dt = 1.0;
    return cs;
}

CaseSetup case_by_name(const std::string& name)
{
    if (name == "inertia-gravity") return inertia_gravity();
    if (name == "rising-bubble") return rising_bubble();
    if (name == "density-current") return density_current();
    throw std::invalid_argument("unknown case \"" + name + "\"");
}

State full_state(const CaseSetup& cs, double, double z, double theta_pert)
{
    const auto& atm = *cs.atmosphere;
    const double r = atm.density(z, theta_pert);
    return {r, r * atm.wind(), 0.0, r * (atm.theta(z) + theta_pert)};
}

Vector build_initial_state(const CaseSetup& cs, const DgSpace& space, bool zero_perturbation)
{
    return l2_project(
        [&](double x, double z) {
            const double tp = zero_perturbation ? 0.0 : cs.theta_pert(x, z);
            return sub(full_state(cs, x, z, tp), cs.atmosphere->at(x, z).U);
        },
        space);
}

}  // namespace dgmg
