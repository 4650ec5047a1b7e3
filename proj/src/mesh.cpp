#include "dgmg/mesh.hpp"

#include <stdexcept>
#include <string>

namespace dgmg
{

void Domain2D::validate() const
{
    if (!(x_max > x_min) || !(z_max > z_min))
        throw std::invalid_argument("domain: require x_max > x_min and z_max > z_min");
}

BoundaryKind BoundarySpec::on(Side s) const
{
    switch (s) {
        case Side::left: return left;
        case Side::right: return right;
        case Side::bottom: return bottom;
        case Side::top: return top;
    }
    return BoundaryKind::slip;
}

void BoundarySpec::validate() const
{
    if ((left == BoundaryKind::periodic) != (right == BoundaryKind::periodic))
        throw std::invalid_argument("boundary: periodic x requires both lateral sides periodic");
    if ((bottom == BoundaryKind::periodic) != (top == BoundaryKind::periodic))
        throw std::invalid_argument("boundary: periodic z requires both bottom and top periodic");
}

GridHierarchy::GridHierarchy(const Domain2D& domain, int base_nx, int base_nz, int n_levels)
    : domain_(domain)
{
    domain.validate();
    if (base_nx < 1 || base_nz < 1)
        throw std::invalid_argument("grid: base cell counts must be >= 1");
    if (n_levels < 1)
        throw std::invalid_argument("grid: need at least one level");
    levels_.reserve(n_levels);
    for (int l = 0; l < n_levels; ++l) {
        GridLevel g;
        g.nx = base_nx << l;
        g.nz = base_nz << l;
        g.dx = domain.width() / g.nx;
        g.dz = domain.height() / g.nz;
        levels_.push_back(g);
    }
}

const GridLevel& GridHierarchy::level(int l) const
{
    if (l < 0 || l >= n_levels())
        throw std::out_of_range("grid: level " + std::to_string(l) + " out of range");
    return levels_[l];
}

bool GridHierarchy::valid(const CellIndex& c) const
{
    if (c.level < 0 || c.level >= n_levels()) return false;
    const auto& g = levels_[c.level];
    return c.i >= 0 && c.i < g.nx && c.j >= 0 && c.j < g.nz;
}

double GridHierarchy::center_x(int l, int i) const
{
    return domain_.x_min + (i + 0.5) * level(l).dx;
}

double GridHierarchy::center_z(int l, int j) const
{
    return domain_.z_min + (j + 0.5) * level(l).dz;
}

std::array<CellIndex, 4> GridHierarchy::children(const CellIndex& c) const
{
    if (!valid(c)) throw std::out_of_range("grid: invalid cell");
    if (c.level + 1 >= n_levels()) throw std::out_of_range("grid: finest level has no children");
    const int l = c.level + 1;
    return {CellIndex{l, 2 * c.i, 2 * c.j}, CellIndex{l, 2 * c.i + 1, 2 * c.j},
            CellIndex{l, 2 * c.i, 2 * c.j + 1}, CellIndex{l, 2 * c.i + 1, 2 * c.j + 1}};
}

CellIndex GridHierarchy::parent(const CellIndex& c) const
{
    if (!valid(c)) throw std::out_of_range("grid: invalid cell");
    if (c.level == 0) throw std::out_of_range("grid: level 0 has no parent");
    return CellIndex{c.level - 1, c.i / 2, c.j / 2};
}

std::array<Neighbor, 4> GridHierarchy::neighbors(const CellIndex& c, const BoundarySpec& bc) const
{
    if (!valid(c)) throw std::out_of_range("grid: invalid cell");
    const auto& g = levels_[c.level];
    std::array<Neighbor, 4> out{};

    auto across = [&](int di, int dj, Side side) {
        Neighbor n;
        int i = c.i + di;
        int j = c.j + dj;
        const bool outside = i < 0 || i >= g.nx || j < 0 || j >= g.nz;
        if (!outside) {
            n.interior = true;
            n.cell = CellIndex{c.level, i, j};
            return n;
        }
        const BoundaryKind kind = bc.on(side);
        if (kind == BoundaryKind::periodic) {
            n.interior = true;
            n.wrapped = true;
            n.cell = CellIndex{c.level, (i + g.nx) % g.nx, (j + g.nz) % g.nz};
            return n;
        }
        n.boundary = kind;
        return n;
    };
    out[0] = across(-1, 0, Side::left);
    out[1] = across(+1, 0, Side::right);
    out[2] = across(0, -1, Side::bottom);
    out[3] = across(0, +1, Side::top);
    return out;
}

int SubgridMap::subcell(const GridHierarchy& h, int dg_i, int dg_j, int a, int b) const
{
    const auto& fv = h.level(fv_level);
    const int fi = dg_i * subcells_per_dir + a;
    const int fj = dg_j * subcells_per_dir + b;
    return fv.index(fi, fj);
}

std::vector<int> SubgridMap::subcells(const GridHierarchy& h, int dg_cell) const
{
    const auto& dg = h.level(dg_level);
    const int i = dg_cell % dg.nx;
    const int j = dg_cell / dg.nx;
    std::vector<int> out;
    out.reserve(subcells_per_cell());
    for (int b = 0; b < subcells_per_dir; ++b)
        for (int a = 0; a < subcells_per_dir; ++a)
            out.push_back(subcell(h, i, j, a, b));
    return out;
}

int subgrid_depth(int k)
{
    if (k < 0) return -1;
    const int n = k + 1;
    if ((n & (n - 1)) != 0) return -1;
    int d = 0;
    while ((1 << d) < n) ++d;
    return d;
}

MeshSetup build_hierarchy(const Domain2D& domain, int base_nx, int base_nz,
                          int dg_refine_level, int k)
{
    const int depth = subgrid_depth(k);
    if (depth < 0)
        throw std::invalid_argument("mesh: k+1 = " + std::to_string(k + 1) +
                                    " is not a power of two; FV subgrid would not nest");
    if (dg_refine_level < 0) throw std::invalid_argument("mesh: negative refinement level");

    MeshSetup m;
    m.hierarchy = GridHierarchy(domain, base_nx, base_nz, dg_refine_level + depth + 1);
    m.subgrid.dg_level = dg_refine_level;
    m.subgrid.fv_level = dg_refine_level + depth;
    m.subgrid.subcells_per_dir = k + 1;
    return m;
}

}  // namespace dgmg
