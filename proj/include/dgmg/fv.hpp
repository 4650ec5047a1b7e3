#pragma once

#include <vector>

#include "dgmg/linalg.hpp"
#include "dgmg/mesh.hpp"
#include "dgmg/model.hpp"
#include "dgmg/physics.hpp"

/**
 * @file fv.hpp
 * @brief First order finite volumes for the perturbation system on one grid level.
 *
 * An FV field holds 4 values per cell at index cell*4 + comp.
 */

namespace dgmg
{

/// Background evaluated at the cell centres of `level`.
std::vector<BackgroundPoint> fv_background(const Atmosphere& atm, const GridHierarchy& h, int level);

class FvOperator
{
  public:
    FvOperator(const GridHierarchy& h, int level, const FlowModel& model);

    /// out = f_low(u'): HLLC face fluxes, gravity source and a two-point viscous term.
    void apply(const Vector& up, Vector& out) const;
    Vector operator()(const Vector& up) const
    {
        Vector out(size());
        apply(up, out);
        return out;
    }

    const GridHierarchy& hierarchy() const { return hierarchy_; }
    int level() const { return level_; }
    const GridLevel& grid() const { return grid_; }
    const FlowModel& model() const { return model_; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(grid_.n_cells()) * 4; }
    const BackgroundPoint& cell_background(int cell) const { return bg_cells_[cell]; }

    /// All cells have equal volume, so the averaged L2 product is uniform.
    InnerProduct inner_product() const { return InnerProduct(); }

    long calls() const { return calls_; }
    void reset_calls() const { calls_ = 0; }

  private:
    GridHierarchy hierarchy_;
    int level_;
    GridLevel grid_;
    FlowModel model_;
    std::vector<BackgroundPoint> bg_cells_;
    std::vector<BackgroundPoint> bg_xface_;  // j*(nx+1) + iface
    std::vector<State> bg_xface_flux_;
    std::vector<BackgroundPoint> bg_zface_;  // jface*nx + i
    std::vector<State> bg_zface_flux_;
    mutable long calls_ = 0;
};

/// g'(u_s) w = w - alpha*dt * f_low'(u_s) w by finite differences around a frozen state.
class FvLinearization
{
  public:
    FvLinearization(const FvOperator& op, Vector state, double alpha_dt);

    void apply(const Vector& w, Vector& out) const;

    const FvOperator& op() const { return *op_; }
    const Vector& state() const { return state_; }
    const Vector& f_state() const { return f_state_; }
    double alpha_dt() const { return alpha_dt_; }

  private:
    const FvOperator* op_;
    Vector state_;
    Vector f_state_;
    double alpha_dt_;
};

void fv_residual_linop(const FvLinearization& lin, const Vector& w, Vector& out);

}  // namespace dgmg
