#pragma once

#include <Eigen/Core>

#include "dgmg/dg.hpp"
#include "dgmg/linalg.hpp"
#include "dgmg/mesh.hpp"
#include "dgmg/quadrature.hpp"

/**
 * @file transfer.hpp
 * @brief Maps between DG nodal fields and the finest FV subgrid.
 *
 * T evaluates each DG polynomial at the (k+1)^2 subcell centres; T^{-1}
 * interpolates subcell values back. Both act blockwise through the same
 * (k+1)^2 x (k+1)^2 matrix, the Kronecker square of the 1D interpolation.
 */

namespace dgmg
{

class Transfer
{
  public:
    Transfer(const DgSpace& space, const SubgridMap& subgrid);

    /// T, or T^mf when `mass_fix` is set.
    Vector to_fv(const Vector& U, bool mass_fix = false) const;
    /// T^{-1}
    Vector to_dg(const Vector& u) const;

    /// Block T_E acting on nodal values ordered b*(k+1) + a.
    const Eigen::MatrixXd& block() const { return T_; }
    const Eigen::MatrixXd& block_inverse() const { return Tinv_; }
    const QuadRule1D& centre_rule() const { return nc_; }

    Eigen::Index dg_size() const { return space_.size(); }
    Eigen::Index fv_size() const;

  private:
    DgSpace space_;
    SubgridMap subgrid_;
    QuadRule1D nc_;
    Eigen::MatrixXd T_;
    Eigen::MatrixXd Tinv_;
    Eigen::VectorXd nc_weights2d_;
};

}  // namespace dgmg
