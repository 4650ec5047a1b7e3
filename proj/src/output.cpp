#include "dgmg/output.hpp"

#include <iomanip>
#include <stdexcept>

namespace dgmg
{

std::vector<SubcellSample> sample_subcells(const CaseSetup& cs, const DgSpace& space, const SubgridMap& subgrid,
                                           const Transfer& tr, const Vector& U)
{
    const Vector u = tr.to_fv(U);
    const auto& h = space.hierarchy();
    const auto& fv = h.level(subgrid.fv_level);
    std::vector<SubcellSample> out(fv.n_cells());
    for (int j = 0; j < fv.nz; ++j)
        for (int i = 0; i < fv.nx; ++i) {
            const int q = fv.index(i, j);
            SubcellSample& s = out[q];
            s.x = h.center_x(subgrid.fv_level, i);
            s.z = h.center_z(subgrid.fv_level, j);
            for (int m = 0; m < 4; ++m) s.up[m] = u[static_cast<Eigen::Index>(q) * 4 + m];
            const BackgroundPoint bg = cs.atmosphere->at(s.x, s.z);
            const State total = add(bg.U, s.up);
            s.theta_p = total[rho_theta] / total[rho] - bg.prim.theta;
        }
    return out;
}

void write_snapshot(const std::string& path, const std::vector<SubcellSample>& samples)
{
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "x,z,rho_p,rhou_p,rhow_p,theta_p\n";
    f << std::setprecision(10);
    for (const auto& s : samples)
        f << s.x << ',' << s.z << ',' << s.up[0] << ',' << s.up[1] << ',' << s.up[2] << ',' << s.theta_p << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

void write_vtk(const std::string& path, const std::vector<SubcellSample>& samples, const GridLevel& fv,
               const Domain2D& domain)
{
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "# vtk DataFile Version 3.0\nperturbation fields\nASCII\nDATASET STRUCTURED_POINTS\n";
    f << "DIMENSIONS " << fv.nx + 1 << ' ' << fv.nz + 1 << " 1\n";
    f << "ORIGIN " << domain.x_min << ' ' << domain.z_min << " 0\n";
    f << "SPACING " << fv.dx << ' ' << fv.dz << " 1\n";
    f << "CELL_DATA " << fv.n_cells() << '\n';
    f << std::setprecision(10);
    const char* names[] = {"rho_p", "rhou_p", "rhow_p", "theta_p"};
    for (int m = 0; m < 4; ++m) {
        f << "SCALARS " << names[m] << " double 1\nLOOKUP_TABLE default\n";
        for (const auto& s : samples) f << (m < 3 ? s.up[m] : s.theta_p) << '\n';
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

StatsWriter::StatsWriter(const std::string& path) : out_(path)
{
    if (!out_) throw std::runtime_error("cannot write " + path);
    out_ << "time,stage,newton_iters,gmres_iters,dg_ops,fv_ops,residual\n";
    out_ << std::setprecision(10);
}

void StatsWriter::row(double time, int stage, const StageStats& s)
{
    out_ << time << ',' << stage << ',' << s.newton_iters << ',' << s.gmres_iters << ',' << s.dg_ops << ','
         << s.fv_ops << ',' << s.residual << '\n';
}

}  // namespace dgmg
