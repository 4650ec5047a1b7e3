#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "dgmg/linalg.hpp"
#include "dgmg/mesh.hpp"
#include "dgmg/model.hpp"
#include "dgmg/physics.hpp"
#include "dgmg/quadrature.hpp"

/**
 * @file dg.hpp
 * @brief Nodal tensor-product DG (collocated Gauss-Legendre) discretization.
 *
 * A DG field stores, per element, (k+1)^2 nodal values of the four conserved
 * perturbation components. Entry (cell, node, comp) lives at
 * ((cell * (k+1)^2) + node) * 4 + comp with node = b*(k+1) + a.
 */

namespace dgmg
{

/// 1D Lagrange basis on the Gauss-Legendre nodes of [0,1].
struct DgBasis
{
    explicit DgBasis(int k);

    int k;
    QuadRule1D gl;
    Eigen::MatrixXd D;     // D(c,a) = l_a'(x_c)
    Eigen::MatrixXd Dhat;  // Dhat(a,c) = w_c / w_a * D(c,a), weak-form derivative
    Eigen::VectorXd at0, at1;    // l_a(0), l_a(1)
    Eigen::VectorXd dat0, dat1;  // l_a'(0), l_a'(1)

    Eigen::VectorXd values(double xi) const;
    Eigen::VectorXd derivatives(double xi) const;
};

class DgSpace
{
  public:
    DgSpace(const GridHierarchy& h, int level, int k);

    int k() const { return basis_.k; }
    int n1() const { return basis_.k + 1; }
    int nodes_per_cell() const { return n1() * n1(); }
    int n_cells() const { return grid_.n_cells(); }
    Eigen::Index size() const { return static_cast<Eigen::Index>(n_cells()) * nodes_per_cell() * 4; }
    Eigen::Index index(int cell, int node, int comp) const
    {
        return (static_cast<Eigen::Index>(cell) * nodes_per_cell() + node) * 4 + comp;
    }

    const GridLevel& grid() const { return grid_; }
    const GridHierarchy& hierarchy() const { return hierarchy_; }
    int level() const { return level_; }
    const DgBasis& basis() const { return basis_; }

    double node_x(int cell, int a) const;
    double node_z(int cell, int b) const;

    /// Mass-weighted, domain-averaged inner product.
    InnerProduct inner_product() const;

    State node_state(const Vector& U, int cell, int node) const;
    void set_node_state(Vector& U, int cell, int node, const State& s) const;

  private:
    GridHierarchy hierarchy_;
    int level_;
    GridLevel grid_;
    DgBasis basis_;
};

struct DgOperatorOptions
{
    /// Interior-penalty coefficient; negative selects (k+1)^2.
    double penalty = -1.0;
};

/**
 * Evaluates f(U') = M^{-1} L_h(U') for the perturbation system.
 *
 * Volume terms use the perturbation convective flux, the viscous flux of the
 * total state and the perturbation gravity source at the collocation nodes.
 * Faces use HLLC for convection and a symmetric interior-penalty flux for
 * viscosity; slip walls mirror the normal momentum and carry no viscous flux.
 */
class DgOperator
{
  public:
    DgOperator(const DgSpace& space, const FlowModel& model, DgOperatorOptions opt = {});

    void apply(const Vector& Up, Vector& out) const;
    Vector operator()(const Vector& Up) const
    {
        Vector out(space_.size());
        apply(Up, out);
        return out;
    }

    const DgSpace& space() const { return space_; }
    const FlowModel& model() const { return model_; }
    const BackgroundPoint& node_background(int cell, int node) const
    {
        return bg_nodes_[static_cast<std::size_t>(cell) * space_.nodes_per_cell() + node];
    }

    /// Largest stable explicit step for the given CFL number.
    double stable_dt(const Vector& Up, double cfl) const;

    long calls() const { return calls_; }
    void reset_calls() const { calls_ = 0; }

  private:
    DgSpace space_;
    FlowModel model_;
    double penalty_;
    std::vector<BackgroundPoint> bg_nodes_;
    std::vector<FluxTensor> bg_node_flux_;
    std::vector<BackgroundPoint> bg_xface_;  // ((j*(nx+1)) + iface)*n1 + b
    std::vector<State> bg_xface_flux_;       // HLLC(Ubar,Ubar,(1,0))
    std::vector<BackgroundPoint> bg_zface_;  // ((jface*nx) + i)*n1 + a
    std::vector<State> bg_zface_flux_;       // HLLC(Ubar,Ubar,(0,1))
    mutable long calls_ = 0;
};

/// Nodal interpolation at the Gauss-Legendre points; coincides with the
/// collocated L2 projection for the diagonal mass matrix.
Vector l2_project(const std::function<State(double, double)>& f, const DgSpace& space);

/// Tensor-Lagrange evaluation at reference coordinates (xi, eta) in [0,1]^2.
State evaluate(const DgSpace& space, const Vector& U, int cell, double xi, double eta);

/// Integral of one component over the domain.
double total_mass(const DgSpace& space, const Vector& U, int comp);

}  // namespace dgmg
