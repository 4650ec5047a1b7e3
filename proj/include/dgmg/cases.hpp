#pragma once

#include <functional>
#include <memory>
#include <string>

#include "dgmg/dg.hpp"
#include "dgmg/mesh.hpp"
#include "dgmg/model.hpp"
#include "dgmg/physics.hpp"

/**
 * @file cases.hpp
 * @brief The three atmospheric test setups.
 *
 * Each case defines a hydrostatic background (theta~, T~, p~) and a
 * potential temperature perturbation theta'. Full states are built at fixed
 * pressure: rho = p0^{R/cp} p~^{1/gamma} / (R (theta~ + theta')).
 */

namespace dgmg
{

/// Hydrostatic background given by analytic theta~(z) and p~(z) with
/// constant horizontal wind.
class HydrostaticAtmosphere : public Atmosphere
{
  public:
    HydrostaticAtmosphere(const PhysConstants& c, double u_bar) : c_(c), u_bar_(u_bar) {}

    virtual double theta(double z) const = 0;
    virtual double dtheta_dz(double z) const = 0;
    virtual double pressure(double z) const = 0;
    double wind() const { return u_bar_; }

    /// Density for potential temperature theta~ + theta' at the background pressure.
    double density(double z, double theta_pert) const;

    BackgroundPoint at(double x, double z) const override;

  protected:
    PhysConstants c_;
    double u_bar_;
};

/// Constant Brunt-Vaisala frequency N: theta~ = T0 exp(z/H), H = g/N^2.
class StratifiedAtmosphere : public HydrostaticAtmosphere
{
  public:
    StratifiedAtmosphere(const PhysConstants& c, double T0, double N, double u_bar);

    double theta(double z) const override;
    double dtheta_dz(double z) const override;
    double pressure(double z) const override;
    double temperature(double z) const;
    double scale_height() const { return H_; }

  private:
    double T0_, H_, alpha_;
};

/// Neutral stratification: theta~ = T0, T~ = T0 - g z / cp.
class NeutralAtmosphere : public HydrostaticAtmosphere
{
  public:
    NeutralAtmosphere(const PhysConstants& c, double T0);

    double theta(double) const override { return T0_; }
    double dtheta_dz(double) const override { return 0.0; }
    double pressure(double z) const override;
    double temperature(double z) const;

  private:
    double T0_;
};

struct CaseSetup
{
    std::string name;
    Domain2D domain;
    PhysConstants constants;
    std::shared_ptr<const HydrostaticAtmosphere> atmosphere;
    std::function<double(double, double)> theta_pert;
    BoundarySpec boundary;
    double t_final = 0.0;

    // default desk-scale discretization
    int base_nx = 1;
    int base_nz = 1;
    int dg_level = 0;
    double dt = 1.0;

    FlowModel model() const { return FlowModel{constants, atmosphere, boundary}; }
};

CaseSetup inertia_gravity();
CaseSetup rising_bubble();
CaseSetup density_current();

/// "inertia-gravity" | "rising-bubble" | "density-current"; throws on anything else.
CaseSetup case_by_name(const std::string& name);

/// Full state for theta~ + theta' at fixed background pressure and wind.
State full_state(const CaseSetup& cs, double x, double z, double theta_pert);

/// Nodal perturbation U(theta~ + theta') - U(theta~); zero when `zero_perturbation` is set.
Vector build_initial_state(const CaseSetup& cs, const DgSpace& space, bool zero_perturbation = false);

}  // namespace dgmg
