#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dgmg/mesh.hpp"

using namespace dgmg;

TEST_CASE("unit square, one DG cell with k = 3 gives three nested grids")
{
    const MeshSetup m = build_hierarchy(Domain2D{}, 1, 1, 0, 3);
    REQUIRE(m.hierarchy.n_levels() == 3);
    CHECK(m.hierarchy.level(0).nx == 1);
    CHECK(m.hierarchy.level(1).nx == 2);
    CHECK(m.hierarchy.level(2).nx == 4);
    CHECK(m.hierarchy.level(2).nz == 4);
    CHECK(m.subgrid.dg_level == 0);
    CHECK(m.subgrid.fv_level == 2);
    CHECK(m.subgrid.subcells_per_cell() == 16);
}

TEST_CASE("rising bubble grid at 25 m DG spacing")
{
    const MeshSetup m = build_hierarchy(Domain2D{0, 1000, 0, 2000}, 10, 20, 2, 3);
    const GridLevel& dg = m.hierarchy.level(m.subgrid.dg_level);
    CHECK(dg.nx == 40);
    CHECK(dg.nz == 80);
    CHECK(dg.dx == doctest::Approx(25.0));
    CHECK(m.hierarchy.level(m.subgrid.fv_level).dx == doctest::Approx(25.0 / 4));
    CHECK(m.hierarchy.n_levels() == 5);
}

TEST_CASE("inertia gravity grid near 940 m")
{
    const MeshSetup m = build_hierarchy(Domain2D{0, 300000, 0, 10000}, 160, 5, 1, 3);
    const GridLevel& dg = m.hierarchy.level(m.subgrid.dg_level);
    CHECK(dg.nx == 320);
    CHECK(dg.nz == 10);
    CHECK(dg.dx == doctest::Approx(937.5));
}

TEST_CASE("degrees with k+1 not a power of two are rejected")
{
    CHECK_THROWS_AS(build_hierarchy(Domain2D{}, 1, 1, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_hierarchy(Domain2D{}, 1, 1, 0, 4), std::invalid_argument);
    CHECK_NOTHROW(build_hierarchy(Domain2D{}, 1, 1, 0, 0));
    CHECK_NOTHROW(build_hierarchy(Domain2D{}, 1, 1, 0, 1));
    CHECK(subgrid_depth(3) == 2);
    CHECK(subgrid_depth(5) == -1);
}

TEST_CASE("bad base sizes and domains")
{
    CHECK_THROWS(build_hierarchy(Domain2D{}, 0, 1, 0, 3));
    CHECK_THROWS(build_hierarchy(Domain2D{1, 0, 0, 1}, 1, 1, 0, 3));
}

TEST_CASE("children and parent")
{
    const GridHierarchy h(Domain2D{}, 1, 1, 3);
    const auto ch = h.children({0, 0, 0});
    CHECK(ch[0] == CellIndex{1, 0, 0});
    CHECK(ch[1] == CellIndex{1, 1, 0});
    CHECK(ch[2] == CellIndex{1, 0, 1});
    CHECK(ch[3] == CellIndex{1, 1, 1});

    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            const CellIndex c{1, i, j};
            double area = 0.0;
            for (const CellIndex& q : h.children(c)) {
                CHECK(h.parent(q) == c);
                area += h.level(q.level).cell_area();
            }
            CHECK(area == h.level(1).cell_area());
        }
    CHECK_THROWS(h.children({2, 0, 0}));
}

TEST_CASE("neighbours with periodic x and slip z")
{
    const GridHierarchy h(Domain2D{}, 4, 3, 1);
    const BoundarySpec bc{BoundaryKind::periodic, BoundaryKind::periodic, BoundaryKind::slip, BoundaryKind::slip};

    const auto inner = h.neighbors({0, 1, 1}, bc);
    for (const auto& n : inner) {
        CHECK(n.interior);
        CHECK_FALSE(n.wrapped);
    }
    CHECK(inner[0].cell == CellIndex{0, 0, 1});
    CHECK(inner[3].cell == CellIndex{0, 1, 2});

    const auto corner = h.neighbors({0, 0, 0}, bc);
    CHECK(corner[0].interior);
    CHECK(corner[0].wrapped);
    CHECK(corner[0].cell.i == 3);
    CHECK_FALSE(corner[2].interior);
    CHECK(corner[2].boundary == BoundaryKind::slip);

    const auto walls = h.neighbors({0, 3, 2}, BoundarySpec{});
    CHECK_FALSE(walls[1].interior);
    CHECK_FALSE(walls[3].interior);
}

TEST_CASE("one-sided periodicity is invalid")
{
    BoundarySpec bc;
    bc.left = BoundaryKind::periodic;
    CHECK_THROWS(bc.validate());
}

TEST_CASE("subcells partition the FV grid")
{
    const MeshSetup m = build_hierarchy(Domain2D{}, 3, 2, 1, 3);
    const GridLevel& dg = m.hierarchy.level(m.subgrid.dg_level);
    const GridLevel& fv = m.hierarchy.level(m.subgrid.fv_level);
    CHECK(dg.n_cells() * 16 == fv.n_cells());
    std::set<int> seen;
    for (int c = 0; c < dg.n_cells(); ++c) {
        const auto sub = m.subgrid.subcells(m.hierarchy, c);
        CHECK(sub.size() == 16u);
        for (int q : sub) {
            CHECK(seen.insert(q).second);
            // the subcell centre lies inside its DG cell
            const double x = m.hierarchy.center_x(m.subgrid.fv_level, q % fv.nx);
            const int i = c % dg.nx;
            CHECK(x > i * dg.dx);
            CHECK(x < (i + 1) * dg.dx);
        }
    }
    CHECK(static_cast<int>(seen.size()) == fv.n_cells());
}
