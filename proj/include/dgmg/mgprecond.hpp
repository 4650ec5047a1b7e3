#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgmg/dg.hpp"
#include "dgmg/fv.hpp"
#include "dgmg/linalg.hpp"
#include "dgmg/mesh.hpp"
#include "dgmg/transfer.hpp"

/**
 * @file mgprecond.hpp
 * @brief Geometric multigrid on the FV subgrid hierarchy, used as a
 * preconditioner for the DG stage systems through Q^{-1} = T^{-1} q^{-1} T.
 */

namespace dgmg
{

class MgConfigError : public std::invalid_argument
{
  public:
    MgConfigError(const std::string& what, std::size_t position)
        : std::invalid_argument(what), position_(position)
    {
    }
    /// Zero-based character offset of the offending character.
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

enum class CycleType { V, W };

struct MgConfig
{
    int a = 0;  // DG pre-smoothing
    int b = 0;  // DG post-smoothing
    int c = 1;  // finest FV pre/post
    int d = 1;
    int e = 1;  // coarser FV pre/post
    int f = 1;
    CycleType cycle = CycleType::V;
    double pseudo_cfl = 1.0;
    int smoother_stages = 1;

    /// Grammar: "mg" followed by six digits and 'V' or 'W', e.g. "mg001111V".
    static MgConfig parse(const std::string& key);
    std::string key() const;
    void validate() const;
};

/// Agglomeration: volume-weighted average of the four children (fine level l -> l-1).
Vector restrict_field(const GridHierarchy& h, int fine_level, const Vector& u);
/// Injection: every child takes its parent's value (coarse level l -> l+1).
Vector prolong_field(const GridHierarchy& h, int coarse_level, const Vector& u);

/**
 * Per-cell pseudo-time step for the linear system g'(u) x = b, where
 * g' = I - alpha_dt * f'. The step is dimensionless:
 *   dtau = cfl / (1 + alpha_dt * sum_d (lambda_d + 2 mu / h_d) / h_d)
 * with lambda_d the largest wave speed of the frozen state along d.
 */
double pseudo_time_step(const State& total, double hx, double hz, double mu, double alpha_dt, double cfl,
                        const PhysConstants& c);

std::vector<double> fv_pseudo_steps(const FvOperator& op, const Vector& state, double alpha_dt, double cfl);

/// Expands per-cell steps to per-entry values (4 per cell, or npc*4 for DG).
Vector expand_steps(const std::vector<double>& per_cell, int entries_per_cell);

/// n_steps explicit Euler updates x <- x + dtau .* (b - A x).
void smooth(const LinearOperator& A, Vector& x, const Vector& b, int n_steps, const Vector& dtau);
void smooth(const FvLinearization& lin, Vector& x, const Vector& b, int n_steps, const Vector& dtau);

/// The FV level stack with frozen linearizations, built once per mesh.
class MultigridSolver
{
  public:
    MultigridSolver(const GridHierarchy& h, int finest_level, const FlowModel& model, MgConfig cfg);

    /// Freezes g' at `finest_state` and at its successive restrictions.
    void set_state(const Vector& finest_state, double alpha_dt);

    /// One cycle on `level` for g'_level x = b, starting from x.
    void cycle(int level, Vector& x, const Vector& b) const;

    int finest_level() const { return finest_; }
    const MgConfig& config() const { return cfg_; }
    const FvLinearization& linearization(int level) const { return *levels_.at(level).lin; }
    const FvOperator& op(int level) const { return *levels_.at(level).op; }
    const Vector& steps(int level) const { return levels_.at(level).dtau; }
    long fv_calls() const;
    void reset_calls() const;

  private:
    struct Level
    {
        std::unique_ptr<FvOperator> op;
        std::unique_ptr<FvLinearization> lin;
        Vector dtau;
    };

    void counts(int level, int& pre, int& post) const;

    GridHierarchy hierarchy_;
    int finest_;
    MgConfig cfg_;
    std::vector<Level> levels_;
};

/**
 * Applies Q^{-1} to a DG vector: optional DG pre-smoothing with the outer
 * Jacobian-free operator, transfer to the FV grid, one multigrid cycle from
 * zero, transfer back and optional DG post-smoothing.
 */
class MultigridPreconditioner
{
  public:
    MultigridPreconditioner(const DgOperator& dg, const SubgridMap& subgrid, MgConfig cfg, bool mass_fix = false);

    /// Freezes the preconditioner at the Newton iterate U; `outer` applies G'(U).
    void setup(const Vector& U, double alpha_dt, LinearOperator outer);

    void apply(const Vector& y, Vector& x) const;
    LinearOperator as_operator() const
    {
        return [this](const Vector& y, Vector& x) { apply(y, x); };
    }

    const MultigridSolver& multigrid() const { return mg_; }
    const Transfer& transfer() const { return transfer_; }
    long fv_calls() const { return mg_.fv_calls(); }
    void reset_calls() const { mg_.reset_calls(); }

  private:
    const DgOperator* dg_;
    SubgridMap subgrid_;
    MgConfig cfg_;
    bool mass_fix_;
    Transfer transfer_;
    MultigridSolver mg_;
    LinearOperator outer_;
    Vector dg_dtau_;
};

}  // namespace dgmg
