#pragma once

#include <array>
#include <vector>

/**
 * @file mesh.hpp
 * @brief Nested uniform Cartesian quad meshes.
 *
 * Level 0 is the coarsest grid; level l+1 splits every cell of level l into
 * four children. One level carries the DG elements, the finest level is the
 * finite-volume subgrid with (k+1)^2 subcells per DG element.
 * Cells are numbered row-major with i (x direction) running fastest.
 */

namespace dgmg
{

struct Domain2D
{
    double x_min = 0.0;
    double x_max = 1.0;
    double z_min = 0.0;
    double z_max = 1.0;

    double width() const { return x_max - x_min; }
    double height() const { return z_max - z_min; }
    void validate() const;
};

enum class BoundaryKind { periodic, slip };

enum class Side { left = 0, right = 1, bottom = 2, top = 3 };

struct BoundarySpec
{
    BoundaryKind left = BoundaryKind::slip;
    BoundaryKind right = BoundaryKind::slip;
    BoundaryKind bottom = BoundaryKind::slip;
    BoundaryKind top = BoundaryKind::slip;

    BoundaryKind on(Side s) const;
    bool periodic_x() const { return left == BoundaryKind::periodic; }
    bool periodic_z() const { return bottom == BoundaryKind::periodic; }
    // periodic sides must come in opposite pairs
    void validate() const;
};

struct GridLevel
{
    int nx = 0;
    int nz = 0;
    double dx = 0.0;
    double dz = 0.0;

    int n_cells() const { return nx * nz; }
    double cell_area() const { return dx * dz; }
    int index(int i, int j) const { return j * nx + i; }
};

struct CellIndex
{
    int level = 0;
    int i = 0;
    int j = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

struct Neighbor
{
    bool interior = false;   // true if another cell lies across this side
    bool wrapped = false;    // interior neighbour reached through a periodic side
    CellIndex cell{};        // valid when interior
    BoundaryKind boundary = BoundaryKind::slip;  // valid when !interior
};

class GridHierarchy
{
  public:
    GridHierarchy() = default;
    GridHierarchy(const Domain2D& domain, int base_nx, int base_nz, int n_levels);

    int n_levels() const { return static_cast<int>(levels_.size()); }
    const GridLevel& level(int l) const;
    const Domain2D& domain() const { return domain_; }

    bool valid(const CellIndex& c) const;
    double center_x(int level, int i) const;
    double center_z(int level, int j) const;

    /// The four level+1 cells covering c, ordered (0,0),(1,0),(0,1),(1,1).
    std::array<CellIndex, 4> children(const CellIndex& c) const;
    CellIndex parent(const CellIndex& c) const;

    /// Neighbours ordered left, right, bottom, top.
    std::array<Neighbor, 4> neighbors(const CellIndex& c, const BoundarySpec& bc) const;

  private:
    Domain2D domain_{};
    std::vector<GridLevel> levels_;
};

/// Relation between a DG element and its finite-volume subcells.
struct SubgridMap
{
    int dg_level = 0;
    int fv_level = 0;
    int subcells_per_dir = 1;  // k+1

    int subcells_per_cell() const { return subcells_per_dir * subcells_per_dir; }
    /// Linear index of subcell (a,b) of DG cell (i,j) on the FV level.
    int subcell(const GridHierarchy& h, int dg_i, int dg_j, int a, int b) const;
    std::vector<int> subcells(const GridHierarchy& h, int dg_cell) const;
};

struct MeshSetup
{
    GridHierarchy hierarchy;
    SubgridMap subgrid;
};

/// Throws std::invalid_argument unless k+1 is a power of two.
MeshSetup build_hierarchy(const Domain2D& domain, int base_nx, int base_nz,
                          int dg_refine_level, int k);

/// log2(k+1) if k+1 is a power of two, -1 otherwise.
int subgrid_depth(int k);

}  // namespace dgmg
