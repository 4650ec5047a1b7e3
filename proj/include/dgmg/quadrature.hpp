#pragma once

#include <vector>

/**
 * @file quadrature.hpp
 * @brief One-dimensional rules on [0,1] and their tensor products on [0,1]^2.
 */

namespace dgmg
{

struct QuadRule1D
{
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

struct QuadPoint2D
{
    double x = 0.0;
    double z = 0.0;
    double weight = 0.0;
};

/// Tensor rule; point (a,b) is stored at index b*n + a.
struct QuadRule2D
{
    std::vector<QuadPoint2D> points;
    int size() const { return static_cast<int>(points.size()); }
};

/// k+1 Gauss-Legendre points on [0,1], exact for degree 2k+1.
QuadRule1D gauss_legendre(int k);

/// Interpolatory rule on the k+1 equal-subcell midpoints (2i+1)/(2(k+1)),
/// exact for degree k. The k = 3 weights are the rational values
/// (1625, 1375, 1375, 1625)/6000; other degrees solve the moment system.
QuadRule1D modified_newton_cotes(int k);

QuadRule2D tensorize(const QuadRule1D& r);

}  // namespace dgmg
