#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "dgmg/cases.hpp"
#include "dgmg/dg.hpp"
#include "dgmg/timeint.hpp"
#include "dgmg/transfer.hpp"

namespace dgmg
{

struct SubcellSample
{
    double x = 0.0;
    double z = 0.0;
    State up{};           // conserved perturbation at the subcell centre
    double theta_p = 0.0; // (rho theta)/rho of the full state minus theta~
};

/// Perturbation fields at the FV subcell centres, row-major over the subgrid.
std::vector<SubcellSample> sample_subcells(const CaseSetup& cs, const DgSpace& space, const SubgridMap& subgrid,
                                           const Transfer& tr, const Vector& U);

/// CSV with header x,z,rho_p,rhou_p,rhow_p,theta_p.
void write_snapshot(const std::string& path, const std::vector<SubcellSample>& samples);

/// Legacy VTK structured points with one cell-data array per column.
void write_vtk(const std::string& path, const std::vector<SubcellSample>& samples, const GridLevel& fv,
               const Domain2D& domain);

class StatsWriter
{
  public:
    explicit StatsWriter(const std::string& path);
    void row(double time, int stage, const StageStats& s);
    void flush() { out_.flush(); }

  private:
    std::ofstream out_;
};

}  // namespace dgmg
