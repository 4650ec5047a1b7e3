// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dgmg/cases.hpp"
#include "dgmg/dg.hpp"
#include "dgmg/fv.hpp"
#include "dgmg/mgprecond.hpp"
#include "dgmg/output.hpp"
#include "dgmg/quadrature.hpp"
#include "dgmg/run.hpp"
#include "dgmg/timeint.hpp"
#include "dgmg/transfer.hpp"

using namespace dgmg;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

DiscretizationParams grid(int bx, int bz, int level, const char* mg = nullptr)
{
    DiscretizationParams p;
    p.base_nx = bx;
    p.base_nz = bz;
    p.dg_level = level;
    if (mg) p.mg = MgConfig::parse(mg);
    return p;
}

Vector random_dg(const DgSpace& sp, std::mt19937& rng)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Vector U(sp.size());
    for (Eigen::Index i = 0; i < U.size(); ++i) U[i] = d(rng);
    return U;
}

// 1. ------------------------------------------------------------------------
Outcome well_balance()
{
    double worst = 0.0;
    int newton = 0;
    for (const char* name : {"inertia-gravity", "rising-bubble", "density-current"}) {
        const CaseSetup cs = case_by_name(name);
        // 20 x 10 DG cells
        const Simulation sim(cs, grid(10, 5, 1, "mg001111V"));
        Vector U = sim.initial_state(true);
        for (int s = 0; s < 10; ++s) {
            StepResult r = sim.implicit_step(U, 10.0);
            if (!r.ok) return {false, std::string(name) + ": " + r.failure};
            newton += r.stages[0].newton_iters + r.stages[1].newton_iters;
            U = std::move(r.U);
        }
        worst = std::max(worst, U.cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-10, fmt("max|U'| = %.3g over three cases, %g Newton iterations", worst, newton)};
}

// 2. ------------------------------------------------------------------------
Outcome centre_quadrature()
{
    const QuadRule1D r = modified_newton_cotes(3);
    const double exact_w[] = {1625.0 / 6000.0, 1375.0 / 6000.0, 1375.0 / 6000.0, 1625.0 / 6000.0};
    const double exact_x[] = {0.125, 0.375, 0.625, 0.875};
    double werr = 0.0;
    for (int i = 0; i < 4; ++i)
        werr = std::max({werr, std::abs(r.weights[i] - exact_w[i]), std::abs(r.nodes[i] - exact_x[i])});
    double err = 0.0;
    for (int m = 0; m <= 3; ++m) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += r.weights[i] * std::pow(r.nodes[i], m);
        err = std::max(err, std::abs(s - 1.0 / (m + 1)));
    }
    return {err <= 1e-14 && werr == 0.0, fmt("max monomial error %.2g (m <= 3), rule deviation %.2g", err, werr)};
}

// 3. ------------------------------------------------------------------------
Outcome mass_fix()
{
    const auto m = build_hierarchy(Domain2D{0, 1000, 0, 500}, 3, 2, 1, 3);
    const DgSpace sp(m.hierarchy, m.subgrid.dg_level, 3);
    const Transfer tr(sp, m.subgrid);
    std::mt19937 rng(7);
    const auto& w = sp.basis().gl.weights;
    const int n = sp.n1();
    double worst_fix = 0.0;
    double worst_plain = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Vector U = random_dg(sp, rng);
        const Vector ufix = tr.to_fv(U, true);
        const Vector uplain = tr.to_fv(U, false);
        for (int cell = 0; cell < sp.n_cells(); ++cell) {
            const auto sub = m.subgrid.subcells(m.hierarchy, cell);
            for (int comp = 0; comp < 4; ++comp) {
                double dg = 0.0;
                for (int b = 0; b < n; ++b)
                    for (int a = 0; a < n; ++a) dg += w[a] * w[b] * U[sp.index(cell, b * n + a, comp)];
                double fix = 0.0, plain = 0.0;
                for (int q : sub) {
                    fix += ufix[q * 4 + comp];
                    plain += uplain[q * 4 + comp];
                }
                fix /= sub.size();
                plain /= sub.size();
                // relative bound with an absolute floor for cell means near zero
                worst_fix = std::max(worst_fix, std::abs(fix - dg) / (1e-12 * std::abs(dg) + 1e-14));
                worst_plain = std::max(worst_plain, std::abs(plain - dg));
            }
        }
    }
    return {worst_fix <= 1.0 && worst_plain > 1e-6,
            fmt("mass-fix error / (1e-12 |m| + 1e-14) = %.2g, plain interpolation mass error %.2g", worst_fix,
                worst_plain)};
}

// 4. ------------------------------------------------------------------------
Outcome transfer_inverse()
{
    const auto m = build_hierarchy(Domain2D{}, 2, 2, 0, 3);
    const DgSpace sp(m.hierarchy, 0, 3);
    const Transfer tr(sp, m.subgrid);
    const Eigen::MatrixXd E = tr.block_inverse() * tr.block() - Eigen::MatrixXd::Identity(16, 16);
    const double block_dev = E.operatorNorm();
    // the same through the field-level maps, one unit vector at a time within a cell
    double field_dev = 0.0;
    for (int node = 0; node < sp.nodes_per_cell(); ++node)
        for (int comp = 0; comp < 4; ++comp) {
            Vector U = Vector::Zero(sp.size());
            U[sp.index(1, node, comp)] = 1.0;
            field_dev = std::max(field_dev, (tr.to_dg(tr.to_fv(U)) - U).cwiseAbs().maxCoeff());
        }
    return {block_dev <= 1e-12 && field_dev <= 1e-12,
            fmt("|T^-1 T - I|_2 = %.2g per block, field round trip %.2g", block_dev, field_dev)};
}

// 5. ------------------------------------------------------------------------
Outcome jacobian_free()
{
    std::mt19937 rng(11);
    std::normal_distribution<double> nd;
    const InnerProduct ip;

    // (a) scalar upwind advection, assembled exactly: (A u)_i = -c (u_i - u_{i-1}) / h in x and z
    const int n = 8;
    const double c = 2.0, hx = 1.0 / n;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int k = j * n + i;
            A(k, k) -= 2.0 * c / hx;
            A(k, j * n + (i + n - 1) % n) += c / hx;
            A(k, ((j + n - 1) % n) * n + i) += c / hx;
        }
    const RhsFunction flin = [&](const Vector& u, Vector& out) { out = A * u; };
    Vector u0(n * n);
    for (auto& v : u0) v = nd(rng);
    Vector f0;
    flin(u0, f0);
    double worst_a = 0.0;
    for (int t = 0; t < 20; ++t) {
        Vector y(n * n), Jy;
        for (auto& v : y) v = nd(rng);
        fd_directional(flin, u0, f0, y, ip, Jy);
        worst_a = std::max(worst_a, (Jy - A * y).norm() / (A * y).norm());
    }

    // (b) compressible FV operator on 8 x 8 cells, Jacobian assembled column by column
    const CaseSetup cs = rising_bubble();
    const GridHierarchy h(cs.domain, 8, 8, 1);
    const FvOperator op(h, 0, cs.model());
    Vector us(op.size());
    for (int cell = 0; cell < 64; ++cell) {
        const double x = h.center_x(0, cell % 8), z = h.center_z(0, cell / 8);
        const State s = sub(full_state(cs, x, z, 5.0 * std::exp(-((x - 500) * (x - 500) + (z - 700) * (z - 700)) / 1e5)),
                            cs.atmosphere->at(x, z).U);
        for (int m = 0; m < 4; ++m) us[cell * 4 + m] = s[m];
        us[cell * 4 + 1] += 0.5 * std::sin(cell);
        us[cell * 4 + 2] += 0.5 * std::cos(cell);
    }
    const double adt = 10.0;
    const FvLinearization lin(op, us, adt);
    Eigen::MatrixXd J(op.size(), op.size());
    for (Eigen::Index j = 0; j < op.size(); ++j) {
        // small enough that the O(step^2) truncation stays below the tolerance
        const double step = 1e-6 * std::max(1.0, std::abs(us[j]));
        Vector up = us, um = us;
        up[j] += step;
        um[j] -= step;
        J.col(j) = (op(up) - op(um)) / (2.0 * step);
    }
    const Eigen::MatrixXd Gp = Eigen::MatrixXd::Identity(op.size(), op.size()) - adt * J;
    double worst_b = 0.0;
    for (int t = 0; t < 20; ++t) {
        Vector y(op.size()), gy;
        for (auto& v : y) v = nd(rng);
        fv_residual_linop(lin, y, gy);
        worst_b = std::max(worst_b, (gy - Gp * y).norm() / (Gp * y).norm());
    }
    return {worst_a <= 1e-5 && worst_b <= 1e-5,
            fmt("max relative deviation: linear advection %.2g, compressible FV %.2g (20 vectors each)", worst_a,
                worst_b)};
}

// 6. ------------------------------------------------------------------------
// u' = -u^2, v' = u v with exact solution u = 1/(1+t), v = 1+t.
Outcome integrator_orders()
{
    const RhsFunction f = [](const Vector& y, Vector& out) {
        out.resize(2);
        out[0] = -y[0] * y[0];
        out[1] = y[0] * y[1];
    };
    const double T = 2.0;
    Vector exact(2);
    exact << 1.0 / (1.0 + T), 1.0 + T;
    ImplicitSystem sys;
    sys.f = f;
    NewtonParams np;
    np.tol = 1e-12;
    np.abs_tol = 1e-14;
    auto run_sdirk = [&](int steps) {
        Vector y(2);
        y << 1.0, 1.0;
        for (int i = 0; i < steps; ++i) {
            StepResult r = sdirk2_step(sys, y, T / steps, np);
            if (!r.ok) throw std::runtime_error("SDIRK2 Newton failure: " + r.failure);
            y = r.U;
        }
        return (y - exact).norm();
    };
    auto run_ssp = [&](int steps) {
        Vector y(2);
        y << 1.0, 1.0;
        for (int i = 0; i < steps; ++i) y = ssprk34_step(f, y, T / steps);
        return (y - exact).norm();
    };
    const double e1 = run_sdirk(40), e2 = run_sdirk(80);
    const double s1 = run_ssp(20), s2 = run_ssp(40);
    const double p_sdirk = std::log2(e1 / e2);
    const double p_ssp = std::log2(s1 / s2);
    const bool ok = p_sdirk >= 1.9 && p_sdirk <= 2.1 && p_ssp >= 2.8 && p_ssp <= 3.2;
    return {ok, fmt("SDIRK2 order %.3f, SSP(4,3) order %.3f", p_sdirk, p_ssp)};
}

// 7. ------------------------------------------------------------------------
Outcome multigrid_contraction()
{
    // 40 x 4 DG cells, FV subgrid 160 x 16
    const Simulation sim(inertia_gravity(), grid(10, 1, 2));
    const Vector U0 = sim.initial_state();
    const double adt = sdirk2_alpha() * 25.0;
    MgConfig cfg = MgConfig::parse("mg111111V");
    MultigridSolver mg(sim.mesh().hierarchy, sim.mesh().subgrid.fv_level, sim.setup().model(), cfg);
    const Vector us = sim.transfer().to_fv(U0);
    mg.set_state(us, adt);
    // right-hand side of the first Newton system, -G(U0) = alpha dt f(U0), on the subgrid
    const Vector b = sim.transfer().to_fv(adt * sim.dg()(U0));
    Vector x = Vector::Zero(b.size());
    mg.cycle(mg.finest_level(), x, b);
    Vector gx;
    mg.linearization(mg.finest_level()).apply(x, gx);
    const double ratio = (b - gx).norm() / b.norm();
    return {ratio <= 0.5, fmt("residual reduced by factor %.2f in one cycle (|r|/|b| = %.3f)", 1.0 / ratio, ratio)};
}

// 8 and 9 share runs --------------------------------------------------------
struct IgRun
{
    bool ok = true;
    long gmres = 0;
    int steps = 0;
    std::string failure;
};

IgRun inertia_gravity_run(const char* mg, double dt, double t_end)
{
    const Simulation sim(inertia_gravity(), grid(10, 1, 2, mg));
    Vector U = sim.initial_state();
    IgRun r;
    for (double t = 0.0; t < t_end - 1e-9; t += dt) {
        StepResult s = sim.implicit_step(U, dt);
        r.gmres += s.stages[0].gmres_iters + s.stages[1].gmres_iters;
        ++r.steps;
        if (!s.ok || !s.U.allFinite()) {
            r.ok = false;
            r.failure = s.failure;
            return r;
        }
        U = std::move(s.U);
    }
    return r;
}

IgRun ig_mg_25;

Outcome preconditioner_benefit()
{
    const IgRun none = inertia_gravity_run(nullptr, 25.0, 500.0);
    ig_mg_25 = inertia_gravity_run("mg001111V", 25.0, 500.0);
    if (!none.ok) return {false, "unpreconditioned run failed: " + none.failure};
    if (!ig_mg_25.ok) return {false, "preconditioned run failed: " + ig_mg_25.failure};
    const double ratio = static_cast<double>(ig_mg_25.gmres) / static_cast<double>(none.gmres);
    return {ratio <= 0.6, fmt("cumulative GMRES iterations %g (mg001111V) vs %g (none), ratio %.2f",
                              static_cast<double>(ig_mg_25.gmres), static_cast<double>(none.gmres), ratio)};
}

Outcome dt_scaling()
{
    if (ig_mg_25.steps == 0) ig_mg_25 = inertia_gravity_run("mg001111V", 25.0, 500.0);
    const IgRun half = inertia_gravity_run("mg001111V", 12.5, 500.0);
    if (!ig_mg_25.ok || !half.ok) return {false, "run failed: " + ig_mg_25.failure + half.failure};
    const double per25 = static_cast<double>(ig_mg_25.gmres) / ig_mg_25.steps;
    const double per125 = static_cast<double>(half.gmres) / half.steps;
    return {per25 / per125 < 2.0,
            fmt("GMRES per step %.1f (dt = 25 s) vs %.1f (dt = 12.5 s), growth %.2f", per25, per125, per25 / per125)};
}

// 10. -----------------------------------------------------------------------
Outcome conservation_symmetry()
{
    // 20 x 40 DG cells
    const Simulation sim(rising_bubble(), grid(5, 10, 2));
    Vector U = sim.initial_state();
    const double m0 = total_mass(sim.space(), U, rho);
    const double dt0 = sim.stable_dt(U, 1.0);
    const double T = 100.0;
    const int steps = static_cast<int>(std::ceil(T / dt0));
    const double dt = T / steps;
    for (int s = 0; s < steps; ++s) U = sim.explicit_step(U, dt);
    const double m1 = total_mass(sim.space(), U, rho);
    const double mass_err = std::abs(m1 - m0) / std::abs(m0);

    // mirror about x = 500: node (i, a) <-> (nx-1-i, k-a); rho u' flips sign
    const auto& sp = sim.space();
    const int nx = sp.grid().nx, n = sp.n1();
    double asym = 0.0, scale = 0.0;
    for (int cell = 0; cell < sp.n_cells(); ++cell) {
        const int i = cell % nx, j = cell / nx;
        const int mirror = j * nx + (nx - 1 - i);
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const State s = sp.node_state(U, cell, b * n + a);
                const State t = sp.node_state(U, mirror, b * n + (n - 1 - a));
                for (int m = 0; m < 4; ++m) {
                    const double sign = m == rho_u ? -1.0 : 1.0;
                    asym = std::max(asym, std::abs(s[m] - sign * t[m]));
                    scale = std::max(scale, std::abs(s[m]));
                }
            }
    }
    const double rel_asym = asym / scale;
    return {mass_err <= 1e-10 && rel_asym <= 1e-8,
            fmt("%g explicit steps: relative mass change %.2g, relative asymmetry %.2g", steps, mass_err, rel_asym)};
}

// 11. -----------------------------------------------------------------------
Outcome rising_bubble_plausibility()
{
    // 10 x 20 DG cells (100 m), FV samples on 40 x 80 subcells
    const CaseSetup cs = rising_bubble();
    const Simulation sim(cs, grid(5, 10, 1, "mg001111V"));
    Vector U = sim.initial_state();
    // explicit reference: twice the CFL=1 helper value, at or above the largest step
    // found stable for SSP(4,3) on this mesh
    const double dt_explicit = 2.0 * sim.stable_dt(U, 1.0);
    const double dt = 500.0 * dt_explicit;
    auto peak_height = [&] {
        const auto s = sample_subcells(cs, sim.space(), sim.mesh().subgrid, sim.transfer(), U);
        double best = -1e300, z = 0.0;
        for (const auto& q : s)
            if (q.theta_p > best) {
                best = q.theta_p;
                z = q.z;
            }
        return z;
    };
    std::vector<double> heights{peak_height()};
    const double T = 360.0;
    double t = 0.0;
    while (t < T - 1e-9) {
        const double h = std::min(dt, T - t);
        StepResult r = sim.implicit_step(U, h);
        if (!r.ok) return {false, fmt("implicit step failed at t = %.1f", t) + ": " + r.failure};
        U = std::move(r.U);
        t += h;
        heights.push_back(peak_height());
    }
    bool monotone = true;
    for (std::size_t i = 1; i < heights.size(); ++i) monotone = monotone && heights[i] >= heights[i - 1];
    std::ostringstream os;
    os << "dt = " << dt << " s (" << dt / dt_explicit << "x explicit), peak height " << heights.front() << " m -> "
       << heights.back() << " m over " << heights.size() - 1 << " steps, " << (monotone ? "monotone" : "NOT monotone");
    return {monotone && heights.back() > heights.front(), os.str()};
}

}  // namespace

int main()
{
    report(1, "well-balance", well_balance);
    report(2, "cell-centre quadrature", centre_quadrature);
    report(3, "mass-fix transfer", mass_fix);
    report(4, "transfer inverse pair", transfer_inverse);
    report(5, "Jacobian-free matvec", jacobian_free);
    report(6, "integrator orders", integrator_orders);
    report(7, "multigrid contraction", multigrid_contraction);
    report(8, "preconditioner benefit", preconditioner_benefit);
    report(9, "sublinear dt scaling", dt_scaling);
    report(10, "conservation and symmetry", conservation_symmetry);
    report(11, "rising bubble plausibility", rising_bubble_plausibility);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
