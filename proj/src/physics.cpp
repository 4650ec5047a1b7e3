#include "dgmg/physics.hpp"

#include <algorithm>
#include <cmath>

namespace dgmg
{

void PhysConstants::validate() const
{
    if (!(cv > 0.0) || !(cp > cv))
        throw std::invalid_argument("constants: require cp > cv > 0");
    if (!(mu >= 0.0)) throw std::invalid_argument("constants: require mu >= 0");
    if (!(p0 > 0.0)) throw std::invalid_argument("constants: require p0 > 0");
}

double pressure(const State& U, const PhysConstants& c)
{
    if (!(U[rho_theta] > 0.0))
        throw InadmissibleState("pressure: non-positive rho*theta");
    return c.p0 * std::pow(c.R() * U[rho_theta] / c.p0, c.gamma());
}

double rho_theta_from_pressure(double p, const PhysConstants& c)
{
    if (!(p > 0.0)) throw InadmissibleState("inverse EOS: non-positive pressure");
    return c.p0 / c.R() * std::pow(p / c.p0, 1.0 / c.gamma());
}

double sound_speed(const State& U, const PhysConstants& c)
{
    if (!(U[rho] > 0.0)) throw InadmissibleState("sound speed: non-positive density");
    return std::sqrt(c.gamma() * pressure(U, c) / U[rho]);
}

FluxTensor flux_convective(const State& U, const PhysConstants& c)
{
    if (!(U[rho] > 0.0)) throw InadmissibleState("flux: non-positive density");
    const double p = pressure(U, c);
    const double u = U[rho_u] / U[rho];
    const double w = U[rho_w] / U[rho];
    FluxTensor F;
    F.x = {U[rho_u], U[rho_u] * u + p, U[rho_w] * u, u * U[rho_theta]};
    F.z = {U[rho_w], U[rho_u] * w, U[rho_w] * w + p, w * U[rho_theta]};
    return F;
}

FluxTensor flux_viscous(const State& U, const PrimitiveGradient& grad, const PhysConstants& c)
{
    const double k = c.mu * U[rho];
    FluxTensor F;
    F.x = {0.0, k * grad.u[0], k * grad.w[0], k * grad.theta[0]};
    F.z = {0.0, k * grad.u[1], k * grad.w[1], k * grad.theta[1]};
    return F;
}

State source_gravity(const State& U, const PhysConstants& c)
{
    return {0.0, 0.0, -U[rho] * c.g, 0.0};
}

double max_wave_speed(const State& U, const Normal& n, const PhysConstants& c)
{
    const double a = sound_speed(U, c);
    const double vn = (U[rho_u] * n.x + U[rho_w] * n.z) / U[rho];
    return std::abs(vn) + a;
}

State mirror_state(const State& U, const Normal& n)
{
    const double mn = U[rho_u] * n.x + U[rho_w] * n.z;
    return {U[rho], U[rho_u] - 2.0 * mn * n.x, U[rho_w] - 2.0 * mn * n.z, U[rho_theta]};
}

namespace
{

struct SideData
{
    double r, un, ut, theta, p, a;
};

SideData side_data(const State& U, const Normal& n, const PhysConstants& c)
{
    if (!(U[rho] > 0.0)) throw InadmissibleState("hllc: non-positive density");
    SideData s;
    s.r = U[rho];
    const double u = U[rho_u] / s.r;
    const double w = U[rho_w] / s.r;
    s.un = u * n.x + w * n.z;
    s.ut = -u * n.z + w * n.x;
    s.theta = U[rho_theta] / s.r;
    s.p = pressure(U, c);
    s.a = std::sqrt(c.gamma() * s.p / s.r);
    return s;
}

State normal_flux(const State& U, const SideData& s, const Normal& n)
{
    return {s.r * s.un, U[rho_u] * s.un + s.p * n.x, U[rho_w] * s.un + s.p * n.z,
            U[rho_theta] * s.un};
}

State star_state(const SideData& s, double S, double s_star, const Normal& n)
{
    const double f = s.r * (S - s.un) / (S - s_star);
    // tangent t = (-n.z, n.x)
    return {f, f * (s_star * n.x - s.ut * n.z), f * (s_star * n.z + s.ut * n.x), f * s.theta};
}

}  // namespace

State hllc_flux(const State& UL, const State& UR, const Normal& n, const PhysConstants& c)
{
    const SideData L = side_data(UL, n, c);
    const SideData R = side_data(UR, n, c);

    const double SL = std::min(L.un - L.a, R.un - R.a);
    const double SR = std::max(L.un + L.a, R.un + R.a);

    if (SL >= 0.0) return normal_flux(UL, L, n);
    if (SR <= 0.0) return normal_flux(UR, R, n);

    const double mL = L.r * (SL - L.un);
    const double mR = R.r * (SR - R.un);
    const double s_star = (R.p - L.p + mL * L.un - mR * R.un) / (mL - mR);
    const double p_star = L.p + mL * (s_star - L.un);
    if (!(p_star > 0.0) || !(s_star > SL) || !(s_star < SR))
        throw InadmissibleState("hllc: vacuum or inconsistent star state");

    if (s_star >= 0.0) {
        const State F = normal_flux(UL, L, n);
        const State Us = star_state(L, SL, s_star, n);
        return {F[0] + SL * (Us[0] - UL[0]), F[1] + SL * (Us[1] - UL[1]),
                F[2] + SL * (Us[2] - UL[2]), F[3] + SL * (Us[3] - UL[3])};
    }
    const State F = normal_flux(UR, R, n);
    const State Us = star_state(R, SR, s_star, n);
    return {F[0] + SR * (Us[0] - UR[0]), F[1] + SR * (Us[1] - UR[1]), F[2] + SR * (Us[2] - UR[2]),
            F[3] + SR * (Us[3] - UR[3])};
}

BackgroundPoint make_background_point(double r, double u, double w, double theta,
                                      const PrimitiveGradient& grad, const PhysConstants& c)
{
    BackgroundPoint bg;
    bg.U = {r, r * u, r * w, r * theta};
    bg.p = pressure(bg.U, c);
    bg.prim = {u, w, theta};
    bg.grad = grad;
    return bg;
}

UniformAtmosphere::UniformAtmosphere(double r, double u, double w, double theta,
                                     const PhysConstants& c)
    : point_(make_background_point(r, u, w, theta, PrimitiveGradient{}, c))
{
}

BackgroundPoint UniformAtmosphere::at(double, double) const { return point_; }

Primitives perturbation_primitives(const State& Up, const BackgroundPoint& bg)
{
    const double r = bg.U[rho] + Up[rho];
    if (!(r > 0.0)) throw InadmissibleState("primitives: non-positive density");
    return {(Up[rho_u] - bg.prim.u * Up[rho]) / r, (Up[rho_w] - bg.prim.w * Up[rho]) / r,
            (Up[rho_theta] - bg.prim.theta * Up[rho]) / r};
}

FluxTensor pert_flux_convective(const State& Up, const BackgroundPoint& bg, const PhysConstants& c)
{
    const FluxTensor Ft = flux_convective(add(bg.U, Up), c);
    const FluxTensor Fb = flux_convective(bg.U, c);
    return {sub(Ft.x, Fb.x), sub(Ft.z, Fb.z)};
}

State pert_source(const State& Up, const PhysConstants& c)
{
    // the gravity source is linear in rho
    return source_gravity(Up, c);
}

State pert_hllc(const State& UpL, const State& UpR, const BackgroundPoint& bg, const Normal& n,
                const PhysConstants& c)
{
    return sub(hllc_flux(add(bg.U, UpL), add(bg.U, UpR), n, c), hllc_flux(bg.U, bg.U, n, c));
}

FluxTensor pert_flux_viscous(const State& Up, const PrimitiveGradient& grad_pert,
                             const BackgroundPoint& bg, const PhysConstants& c)
{
    PrimitiveGradient g;
    for (int d = 0; d < 2; ++d) {
        g.u[d] = bg.grad.u[d] + grad_pert.u[d];
        g.w[d] = bg.grad.w[d] + grad_pert.w[d];
        g.theta[d] = bg.grad.theta[d] + grad_pert.theta[d];
    }
    return flux_viscous(add(bg.U, Up), g, c);
}

FluxTensor pert_flux_convective(const State& Up, double x, double z, const Atmosphere& atm,
                                const PhysConstants& c)
{
    return pert_flux_convective(Up, atm.at(x, z), c);
}

State pert_source(const State& Up, double, double, const Atmosphere&, const PhysConstants& c)
{
    return pert_source(Up, c);
}

State pert_hllc(const State& UpL, const State& UpR, double x, double z, const Normal& n,
                const Atmosphere& atm, const PhysConstants& c)
{
    return pert_hllc(UpL, UpR, atm.at(x, z), n, c);
}

}  // namespace dgmg
