#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "dgmg/linalg.hpp"

/**
 * @file timeint.hpp
 * @brief SDIRK2 with inexact Jacobian-free Newton-GMRES, and the explicit
 * four-stage third order SSP scheme.
 */

namespace dgmg
{

/// Right-hand side of the semi-discrete system U' = f(U).
using RhsFunction = std::function<void(const Vector& U, Vector& f)>;

struct GmresOptions
{
    int restart = 30;
    int max_iters = 400;
};

struct GmresResult
{
    Vector x;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;         // final |b - A x|
    std::vector<double> history;   // residual estimate after each iteration, history[0] = |b|
};

/**
 * Right-preconditioned restarted GMRES: solves A M z = b and returns x = M z.
 * Stops once the true residual estimate satisfies |b - A x| <= eta |b|.
 * An empty M means no preconditioning.
 */
GmresResult gmres_solve(const LinearOperator& A, const Vector& b, const LinearOperator& M, const InnerProduct& ip,
                        double eta, const GmresOptions& opt = {});

struct NewtonParams
{
    double tol = 1e-3;
    /// Residuals below this absolute level count as converged.
    double abs_tol = 0.0;
    int max_iters = 30;
    double ew_gamma = 0.1;
    double ew_alpha = 1.0;
    double eta_initial = 0.1;
    double eta_max = 0.5;
    GmresOptions gmres{};

    void validate() const;
};

double eisenstat_walker_eta(double norm_gk, double norm_gk_prev, double eta_prev, const NewtonParams& p);

/// Called once per Newton iterate with U and G(U); returns the preconditioner
/// to use for that linear solve (or an empty operator). `Jv` applies G'(U).
using PreconditionerSetup =
    std::function<LinearOperator(const Vector& U, const Vector& GU, const LinearOperator& Jv)>;

struct NewtonResult
{
    Vector U;
    int iterations = 0;
    int gmres_iterations = 0;
    bool converged = false;
    double residual0 = 0.0;
    double residual = 0.0;
    std::string failure;
};

/**
 * Inexact Newton for G(U) = 0 with Jacobian-vector products by finite
 * differences, G'(U)y ~ (G(U + eps y) - G(U))/eps, eps = sqrt(eps_mach)/|y|.
 * Terminates when |G(U_k)| < tol |G(U_0)|.
 */
NewtonResult newton_solve(const RhsFunction& G, const Vector& U0, const InnerProduct& ip, const NewtonParams& p,
                          const PreconditionerSetup& precond = {});

/// Diagonal coefficient of the two-stage SDIRK scheme, 1 - sqrt(2)/2.
inline double sdirk2_alpha() { return 1.0 - std::sqrt(2.0) / 2.0; }

/// Closed form stability function of the scheme for y' = z y.
double sdirk2_stability(double z);

struct StageStats
{
    int newton_iters = 0;
    int gmres_iters = 0;
    long dg_ops = 0;
    long fv_ops = 0;
    double residual = 0.0;
};

struct StepResult
{
    Vector U;
    StageStats stages[2];
    bool ok = true;
    std::string failure;
};

/// What an implicit stage solve needs besides f itself.
struct ImplicitSystem
{
    RhsFunction f;
    InnerProduct ip;
    /// Optional: builds the preconditioner for G(U) = U - alpha_dt f(U) - rhs.
    std::function<LinearOperator(const Vector& U, double alpha_dt, const LinearOperator& Jv)> precond;
    /// Optional operator-call counters for the statistics.
    std::function<long()> dg_calls;
    std::function<long()> fv_calls;
};

StepResult sdirk2_step(const ImplicitSystem& sys, const Vector& U, double dt, const NewtonParams& p);

Vector ssprk34_step(const RhsFunction& f, const Vector& U, double dt);

}  // namespace dgmg
