#include "dgmg/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dgmg
{

namespace
{

// Legendre P_n and its derivative at x in [-1,1].
void legendre(int n, double x, double& p, double& dp)
{
    double p0 = 1.0;
    double p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadRule1D gauss_legendre(int k)
{
    if (k < 0) throw std::invalid_argument("gauss_legendre: negative degree");
    const int n = k + 1;
    QuadRule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, roots ordered from -1 to 1
        double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p = 0.0;
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        r.nodes[i] = 0.5 * (x + 1.0);
        r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2) scaled by 1/2
    }
    return r;
}

QuadRule1D modified_newton_cotes(int k)
{
    if (k < 0) throw std::invalid_argument("modified_newton_cotes: negative degree");
    const int n = k + 1;
    QuadRule1D r;
    r.nodes.resize(n);
    for (int i = 0; i < n; ++i) r.nodes[i] = (2.0 * i + 1.0) / (2.0 * n);

    if (k == 3) {
        r.weights = {1625.0 / 6000.0, 1375.0 / 6000.0, 1375.0 / 6000.0, 1625.0 / 6000.0};
        return r;
    }
    if (n > 12)
        throw std::invalid_argument("modified_newton_cotes: degree too large for a stable moment solve");

    // sum_i w_i x_i^m = 1/(m+1), m = 0..k
    Eigen::MatrixXd V(n, n);
    Eigen::VectorXd rhs(n);
    for (int m = 0; m < n; ++m) {
        for (int i = 0; i < n; ++i) V(m, i) = std::pow(r.nodes[i], m);
        rhs(m) = 1.0 / (m + 1.0);
    }
    const Eigen::VectorXd w = V.fullPivLu().solve(rhs);
    r.weights.assign(w.data(), w.data() + n);
    return r;
}

QuadRule2D tensorize(const QuadRule1D& r)
{
    QuadRule2D q;
    const int n = r.size();
    q.points.reserve(n * n);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a)
            q.points.push_back({r.nodes[a], r.nodes[b], r.weights[a] * r.weights[b]});
    return q;
}

}  // namespace dgmg
