#pragma once

#include <iosfwd>
#include <memory>
#include <optional>

#include "dgmg/cases.hpp"
#include "dgmg/config.hpp"
#include "dgmg/dg.hpp"
#include "dgmg/mesh.hpp"
#include "dgmg/mgprecond.hpp"
#include "dgmg/timeint.hpp"
#include "dgmg/transfer.hpp"

namespace dgmg
{

struct DiscretizationParams
{
    int base_nx = 1;
    int base_nz = 1;
    int dg_level = 0;
    int k = 3;
    std::optional<MgConfig> mg;  // empty: unpreconditioned GMRES
    bool mass_fix = false;
    NewtonParams newton{};
};

/// Mesh, DG operator, transfer and preconditioner for one case. Not copyable
/// or movable: the preconditioner refers to the operator by address.
class Simulation
{
  public:
    Simulation(CaseSetup cs, const DiscretizationParams& p);
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    const CaseSetup& setup() const { return case_; }
    const MeshSetup& mesh() const { return mesh_; }
    const DgSpace& space() const { return dg_->space(); }
    const DgOperator& dg() const { return *dg_; }
    const Transfer& transfer() const { return *transfer_; }
    const MultigridPreconditioner* preconditioner() const { return precond_.get(); }
    const ImplicitSystem& system() const { return system_; }
    const NewtonParams& newton() const { return params_.newton; }

    Vector initial_state(bool zero_perturbation = false) const;
    StepResult implicit_step(const Vector& U, double dt) const;
    Vector explicit_step(const Vector& U, double dt) const;
    double stable_dt(const Vector& U, double cfl) const { return dg_->stable_dt(U, cfl); }

  private:
    CaseSetup case_;
    DiscretizationParams params_;
    MeshSetup mesh_;
    std::unique_ptr<DgOperator> dg_;
    std::unique_ptr<Transfer> transfer_;
    std::unique_ptr<MultigridPreconditioner> precond_;
    ImplicitSystem system_;
};

struct RunSummary
{
    int exit_code = 0;
    int steps = 0;
    double time = 0.0;
    long gmres_iters = 0;
    double max_abs_perturbation = 0.0;
};

DiscretizationParams discretization_from(const RunConfig& cfg, const CaseSetup& cs);

/// Time loop with snapshots and statistics written to cfg.outdir.
/// Exit code 0 on success, 3 on solver failure.
RunSummary run(const RunConfig& cfg, std::ostream& log);

}  // namespace dgmg
