#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <limits>

namespace dgmg
{

using Vector = Eigen::VectorXd;

/// y <- A x for a linear (or Jacobian-free approximate) operator.
using LinearOperator = std::function<void(const Vector& x, Vector& y)>;

/**
 * Weighted inner product <a,b> = sum_i w_i a_i b_i with sum_i w_i = 1.
 *
 * With cell-volume and quadrature weights this is a discrete, domain-averaged
 * L2 product, so norms are independent of domain size and mesh resolution.
 * An empty weight vector means uniform weights 1/N.
 */
class InnerProduct
{
  public:
    InnerProduct() = default;
    explicit InnerProduct(Vector weights) : weights_(std::move(weights)) {}

    double dot(const Vector& a, const Vector& b) const
    {
        if (weights_.size() == 0) return a.dot(b) / static_cast<double>(a.size());
        double s = 0.0;
        for (Eigen::Index i = 0; i < a.size(); ++i) s += weights_[i] * a[i] * b[i];
        return s;
    }
    double norm(const Vector& a) const { return std::sqrt(dot(a, a)); }
    const Vector& weights() const { return weights_; }

  private:
    Vector weights_;
};

/**
 * Directional derivative (f(u + eps*y) - f(u)) / eps of a nonlinear map with
 * eps = sqrt(machine eps) / |y|. `fu` is the cached value f(u). A zero
 * direction returns zero without evaluating f.
 */
inline void fd_directional(const std::function<void(const Vector&, Vector&)>& f, const Vector& u,
                           const Vector& fu, const Vector& y, const InnerProduct& ip, Vector& out)
{
    const double ny = ip.norm(y);
    if (ny == 0.0) {
        out.setZero(fu.size());
        return;
    }
    const double eps = std::sqrt(std::numeric_limits<double>::epsilon()) / ny;
    Vector up = u + eps * y;
    f(up, out);
    out -= fu;
    out /= eps;
}

}  // namespace dgmg
