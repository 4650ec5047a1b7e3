#include "dgmg/transfer.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace dgmg
{

Transfer::Transfer(const DgSpace& space, const SubgridMap& subgrid)
    : space_(space), subgrid_(subgrid), nc_(modified_newton_cotes(space.k()))
{
    const int n = space.n1();
    if (subgrid.subcells_per_dir != n || subgrid.dg_level != space.level())
        throw std::invalid_argument("transfer: subgrid does not match the DG space");

    Eigen::MatrixXd T1(n, n);
    for (int q = 0; q < n; ++q) T1.row(q) = space.basis().values(nc_.nodes[q]).transpose();
    const Eigen::MatrixXd T1inv = T1.inverse();
    // row index b*n + a: z index is the slow one, so it is the left factor
    T_ = Eigen::kroneckerProduct(T1, T1);
    Tinv_ = Eigen::kroneckerProduct(T1inv, T1inv);

    nc_weights2d_.resize(n * n);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) nc_weights2d_[b * n + a] = nc_.weights[a] * nc_.weights[b];
}

Eigen::Index Transfer::fv_size() const
{
    return static_cast<Eigen::Index>(space_.hierarchy().level(subgrid_.fv_level).n_cells()) * 4;
}

Vector Transfer::to_fv(const Vector& U, bool mass_fix) const
{
    if (U.size() != space_.size()) throw std::invalid_argument("transfer: DG field size mismatch");
    const int npc = space_.nodes_per_cell();
    const auto& h = space_.hierarchy();
    const int nx = space_.grid().nx;
    Vector u(fv_size());
    Eigen::MatrixXd local(npc, 4);
    for (int cell = 0; cell < space_.n_cells(); ++cell) {
        // nodal values are stored node-major with 4 components each
        const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>> Ue(
            U.data() + space_.index(cell, 0, 0), npc, 4);
        local.noalias() = T_ * Ue;
        if (mass_fix) {
            for (int m = 0; m < 4; ++m) {
                const double dg_avg = nc_weights2d_.dot(local.col(m));
                const double fv_avg = local.col(m).mean();
                local.col(m).array() -= fv_avg - dg_avg;
            }
        }
        const int i = cell % nx;
        const int j = cell / nx;
        for (int b = 0; b < space_.n1(); ++b)
            for (int a = 0; a < space_.n1(); ++a) {
                const int q = subgrid_.subcell(h, i, j, a, b);
                for (int m = 0; m < 4; ++m) u[static_cast<Eigen::Index>(q) * 4 + m] = local(b * space_.n1() + a, m);
            }
    }
    return u;
}

Vector Transfer::to_dg(const Vector& u) const
{
    if (u.size() != fv_size()) throw std::invalid_argument("transfer: FV field size mismatch");
    const int npc = space_.nodes_per_cell();
    const auto& h = space_.hierarchy();
    const int nx = space_.grid().nx;
    Vector U(space_.size());
    Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor> local(npc, 4);
    for (int cell = 0; cell < space_.n_cells(); ++cell) {
        const int i = cell % nx;
        const int j = cell / nx;
        for (int b = 0; b < space_.n1(); ++b)
            for (int a = 0; a < space_.n1(); ++a) {
                const int q = subgrid_.subcell(h, i, j, a, b);
                for (int m = 0; m < 4; ++m) local(b * space_.n1() + a, m) = u[static_cast<Eigen::Index>(q) * 4 + m];
            }
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>> Ue(
            U.data() + space_.index(cell, 0, 0), npc, 4);
        Ue.noalias() = Tinv_ * local;
    }
    return U;
}

}  // namespace dgmg
