#pragma once

#include <array>
#include <stdexcept>
#include <string>

/**
 * @file physics.hpp
 * @brief Point-wise physics of the 2D compressible equations with gravity.
 *
 * Conserved variables are (rho, rho*u, rho*w, rho*theta). Pressure follows
 * the potential-temperature closure p = p0 * (R_d * rho*theta / p0)^gamma.
 * The perturbation variants evaluate a flux or source of U' + Ubar minus the
 * same quantity of Ubar, so they vanish exactly when U' = 0.
 */

namespace dgmg
{

using State = std::array<double, 4>;

enum Component : int { rho = 0, rho_u = 1, rho_w = 2, rho_theta = 3 };

struct PhysConstants
{
    double cp = 1005.0;
    double cv = 717.95;
    double g = 9.80665;
    double mu = 0.0;
    double p0 = 1.0e5;

    double R() const { return cp - cv; }
    double gamma() const { return cp / cv; }
    void validate() const;
};

struct Normal
{
    double x = 1.0;
    double z = 0.0;

    Normal operator-() const { return {-x, -z}; }
};

/// Column x holds the x-flux of all four components, column z the z-flux.
struct FluxTensor
{
    State x{};
    State z{};

    State dot(const Normal& n) const
    {
        return {x[0] * n.x + z[0] * n.z, x[1] * n.x + z[1] * n.z,
                x[2] * n.x + z[2] * n.z, x[3] * n.x + z[3] * n.z};
    }
};

/// Gradients of the primitive fields u, w, theta; each entry is (d/dx, d/dz).
struct PrimitiveGradient
{
    std::array<double, 2> u{};
    std::array<double, 2> w{};
    std::array<double, 2> theta{};
};

struct Primitives
{
    double u = 0.0;
    double w = 0.0;
    double theta = 0.0;
};

/// Raised when a state with non-positive density or rho*theta (or a vacuum
/// Riemann star state) is encountered. Carries the offending cell if known.
class InadmissibleState : public std::runtime_error
{
  public:
    explicit InadmissibleState(const std::string& what, int cell = -1)
        : std::runtime_error(what), cell_(cell)
    {
    }
    int cell() const { return cell_; }

  private:
    int cell_;
};

double pressure(const State& U, const PhysConstants& c);
/// Inverse of the equation of state: rho*theta for a given pressure.
double rho_theta_from_pressure(double p, const PhysConstants& c);
double sound_speed(const State& U, const PhysConstants& c);

FluxTensor flux_convective(const State& U, const PhysConstants& c);
FluxTensor flux_viscous(const State& U, const PrimitiveGradient& grad, const PhysConstants& c);
State source_gravity(const State& U, const PhysConstants& c);
State hllc_flux(const State& UL, const State& UR, const Normal& n, const PhysConstants& c);
double max_wave_speed(const State& U, const Normal& n, const PhysConstants& c);

/// Slip-wall ghost state: normal momentum reversed, everything else kept.
State mirror_state(const State& U, const Normal& n);

/// Background (environmental atmosphere) data at one point.
struct BackgroundPoint
{
    State U{};          // conserved background state
    double p = 0.0;     // background pressure
    Primitives prim{};  // background u, w, theta
    PrimitiveGradient grad{};
};

BackgroundPoint make_background_point(double rho, double u, double w, double theta,
                                      const PrimitiveGradient& grad, const PhysConstants& c);

class Atmosphere
{
  public:
    virtual ~Atmosphere() = default;
    virtual BackgroundPoint at(double x, double z) const = 0;
};

/// Spatially constant background; a steady state whenever g = 0.
class UniformAtmosphere : public Atmosphere
{
  public:
    UniformAtmosphere(double rho, double u, double w, double theta, const PhysConstants& c);
    BackgroundPoint at(double x, double z) const override;

  private:
    BackgroundPoint point_;
};

inline State add(const State& a, const State& b)
{
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline State sub(const State& a, const State& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

/// Perturbations of u, w, theta; exactly zero when U' = 0.
Primitives perturbation_primitives(const State& Up, const BackgroundPoint& bg);

FluxTensor pert_flux_convective(const State& Up, const BackgroundPoint& bg, const PhysConstants& c);
State pert_source(const State& Up, const PhysConstants& c);
State pert_hllc(const State& UpL, const State& UpR, const BackgroundPoint& bg, const Normal& n,
                const PhysConstants& c);
/// Viscous flux of the total state: mu * rho * (0, grad u, grad w, grad theta).
FluxTensor pert_flux_viscous(const State& Up, const PrimitiveGradient& grad_pert,
                             const BackgroundPoint& bg, const PhysConstants& c);

FluxTensor pert_flux_convective(const State& Up, double x, double z, const Atmosphere& atm,
                                const PhysConstants& c);
State pert_source(const State& Up, double x, double z, const Atmosphere& atm, const PhysConstants& c);
State pert_hllc(const State& UpL, const State& UpR, double x, double z, const Normal& n,
                const Atmosphere& atm, const PhysConstants& c);

}  // namespace dgmg
