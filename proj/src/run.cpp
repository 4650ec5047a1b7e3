#include "dgmg/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "dgmg/output.hpp"

namespace dgmg
{

Simulation::Simulation(CaseSetup cs, const DiscretizationParams& p)
    : case_(std::move(cs)),
      params_(p),
      mesh_(build_hierarchy(case_.domain, p.base_nx, p.base_nz, p.dg_level, p.k))
{
    const FlowModel model = case_.model();
    dg_ = std::make_unique<DgOperator>(DgSpace(mesh_.hierarchy, mesh_.subgrid.dg_level, p.k), model);
    transfer_ = std::make_unique<Transfer>(dg_->space(), mesh_.subgrid);

    system_.f = [this](const Vector& U, Vector& f) { dg_->apply(U, f); };
    system_.ip = dg_->space().inner_product();
    system_.dg_calls = [this] { return dg_->calls(); };
    if (p.mg) {
        precond_ = std::make_unique<MultigridPreconditioner>(*dg_, mesh_.subgrid, *p.mg, p.mass_fix);
        MultigridPreconditioner* pc = precond_.get();
        system_.precond = [pc](const Vector& U, double adt, const LinearOperator& Jv) {
            pc->setup(U, adt, Jv);
            return pc->as_operator();
        };
        system_.fv_calls = [pc] { return pc->fv_calls(); };
    }
}

Vector Simulation::initial_state(bool zero_perturbation) const
{
    return build_initial_state(case_, dg_->space(), zero_perturbation);
}

StepResult Simulation::implicit_step(const Vector& U, double dt) const
{
    return sdirk2_step(system_, U, dt, params_.newton);
}

Vector Simulation::explicit_step(const Vector& U, double dt) const { return ssprk34_step(system_.f, U, dt); }

DiscretizationParams discretization_from(const RunConfig& cfg, const CaseSetup& cs)
{
    DiscretizationParams p;
    p.k = cfg.k;
    p.base_nx = cfg.base_nx > 0 ? cfg.base_nx : cs.base_nx;
    p.base_nz = cfg.base_nz > 0 ? cfg.base_nz : cs.base_nz;
    p.dg_level = cfg.dg_level >= 0 ? cfg.dg_level : cs.dg_level;
    if (cfg.mg) {
        MgConfig m = *cfg.mg;
        m.pseudo_cfl = cfg.pseudo_cfl;
        m.smoother_stages = cfg.smoother_stages;
        p.mg = m;
    }
    p.mass_fix = cfg.mass_fix;
    p.newton.tol = cfg.newton_tol;
    p.newton.max_iters = cfg.newton_max_iters;
    p.newton.gmres.restart = cfg.gmres_restart;
    p.newton.gmres.max_iters = cfg.gmres_max_iters;
    return p;
}

namespace
{

std::string snapshot_name(const std::string& dir, int index, const char* ext)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_%05d.%s", index, ext);
    return (std::filesystem::path(dir) / buf).string();
}

}  // namespace

RunSummary run(const RunConfig& cfg, std::ostream& log)
{
    RunSummary summary;
    const CaseSetup cs = case_by_name(cfg.case_name);
    const Simulation sim(cs, discretization_from(cfg, cs));
    const bool verbose = cfg.log_format == "text";
    const double t_final = cfg.t_final >= 0.0 ? cfg.t_final : cs.t_final;

    std::filesystem::create_directories(cfg.outdir);
    StatsWriter stats((std::filesystem::path(cfg.outdir) / "stats.csv").string());

    Vector U = sim.initial_state(cfg.zero_perturbation);
    int snap = 0;
    double last_snapshot = -1.0;
    auto snapshot = [&](double t) {
        last_snapshot = t;
        const auto samples = sample_subcells(cs, sim.space(), sim.mesh().subgrid, sim.transfer(), U);
        write_snapshot(snapshot_name(cfg.outdir, snap, "csv"), samples);
        if (cfg.vtk)
            write_vtk(snapshot_name(cfg.outdir, snap, "vtk"), samples,
                      sim.mesh().hierarchy.level(sim.mesh().subgrid.fv_level), cs.domain);
        if (verbose) log << "snapshot " << snap << " at t = " << t << '\n';
        ++snap;
    };

    const auto& grid = sim.space().grid();
    if (verbose)
        log << cs.name << ": " << grid.nx << " x " << grid.nz << " DG cells, k = " << cfg.k << ", "
            << (cfg.integrator == Integrator::implicit ? "SDIRK2" : "SSP(4,3)") << ", preconditioner "
            << (cfg.mg ? cfg.mg->key() : std::string("none")) << '\n';
    snapshot(0.0);

    double t = 0.0;
    double next_output = cfg.output_interval > 0.0 ? cfg.output_interval : t_final;
    const double eps_t = 1e-9 * std::max(1.0, t_final);
    while (t < t_final - eps_t) {
        double dt = cfg.dt;
        if (dt <= 0.0) dt = cfg.integrator == Integrator::implicit ? cs.dt : sim.stable_dt(U, cfg.cfl);
        dt = std::min(dt, t_final - t);
        try {
            if (cfg.integrator == Integrator::implicit) {
                StepResult r = sim.implicit_step(U, dt);
                for (int s = 0; s < 2; ++s) {
                    stats.row(t + dt, s + 1, r.stages[s]);
                    summary.gmres_iters += r.stages[s].gmres_iters;
                }
                if (!r.ok) {
                    stats.flush();
                    log << "solver failure at t = " << t << ": " << r.failure << '\n';
                    summary.exit_code = 3;
                    summary.time = t;
                    return summary;
                }
                U = std::move(r.U);
                if (verbose)
                    log << "t = " << t + dt << "  newton " << r.stages[0].newton_iters << '+'
                        << r.stages[1].newton_iters << "  gmres " << r.stages[0].gmres_iters << '+'
                        << r.stages[1].gmres_iters << '\n';
            } else {
                U = sim.explicit_step(U, dt);
                if (!U.allFinite()) throw InadmissibleState("non-finite state after explicit step");
                stats.row(t + dt, 0, StageStats{});
            }
        } catch (const InadmissibleState& e) {
            stats.flush();
            log << "solver failure at t = " << t << ": " << e.what() << '\n';
            summary.exit_code = 3;
            summary.time = t;
            return summary;
        }
        t += dt;
        ++summary.steps;
        if (t >= next_output - eps_t) {
            snapshot(t);
            next_output += cfg.output_interval > 0.0 ? cfg.output_interval : t_final;
        }
    }
    if (last_snapshot != t) snapshot(t);
    summary.time = t;
    summary.max_abs_perturbation = U.size() ? U.cwiseAbs().maxCoeff() : 0.0;
    if (verbose) log << "done: " << summary.steps << " steps, max|U'| = " << summary.max_abs_perturbation << '\n';
    return summary;
}

}  // namespace dgmg
