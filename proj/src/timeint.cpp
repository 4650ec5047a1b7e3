#include "dgmg/timeint.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dgmg/physics.hpp"

namespace dgmg
{

// ---------------------------------------------------------------------------
// GMRES

GmresResult gmres_solve(const LinearOperator& A, const Vector& b, const LinearOperator& M, const InnerProduct& ip,
                        double eta, const GmresOptions& opt)
{
    if (opt.restart < 1 || opt.max_iters < 0) throw std::invalid_argument("gmres: invalid options");
    GmresResult res;
    const Eigen::Index n = b.size();
    res.x = Vector::Zero(n);
    const double bnorm = ip.norm(b);
    res.history.push_back(bnorm);
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }
    const double target = eta * bnorm;
    const int m = opt.restart;

    Vector r = b;
    double beta = bnorm;
    std::vector<Vector> V(m + 1, Vector(n));
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd cs(m), sn(m), g(m + 1);
    Vector z(n), w(n);

    while (res.iterations < opt.max_iters) {
        V[0] = r / beta;
        g.setZero();
        g[0] = beta;
        H.setZero();
        int j = 0;
        bool done = false;
        for (; j < m && res.iterations < opt.max_iters; ++j) {
            if (M)
                M(V[j], z);
            else
                z = V[j];
            A(z, w);
            for (int i = 0; i <= j; ++i) {
                H(i, j) = ip.dot(w, V[i]);
                w -= H(i, j) * V[i];
            }
            H(j + 1, j) = ip.norm(w);
            const bool breakdown = H(j + 1, j) <= 1e-14 * std::abs(H(j, j));
            if (!breakdown) V[j + 1] = w / H(j + 1, j);

            for (int i = 0; i < j; ++i) {
                const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
                H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
                H(i, j) = t;
            }
            const double den = std::hypot(H(j, j), H(j + 1, j));
            cs[j] = den == 0.0 ? 1.0 : H(j, j) / den;
            sn[j] = den == 0.0 ? 0.0 : H(j + 1, j) / den;
            H(j, j) = den;
            H(j + 1, j) = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            ++res.iterations;
            res.history.push_back(std::abs(g[j + 1]));
            if (std::abs(g[j + 1]) <= target || breakdown) {
                ++j;
                done = true;
                break;
            }
        }

        // x += M (V y)
        const Eigen::VectorXd y = H.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
        Vector Vy = Vector::Zero(n);
        for (int i = 0; i < j; ++i) Vy += y[i] * V[i];
        if (M) {
            M(Vy, z);
            res.x += z;
        } else {
            res.x += Vy;
        }

        A(res.x, w);
        r = b - w;
        beta = ip.norm(r);
        res.residual = beta;
        if (beta <= target) {
            res.converged = true;
            return res;
        }
        if (done && res.iterations >= opt.max_iters) break;
    }
    res.converged = res.residual <= target;
    return res;
}

// ---------------------------------------------------------------------------
// Newton

void NewtonParams::validate() const
{
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("newton: tol must lie in (0,1)");
    if (!(ew_gamma > 0.0 && ew_gamma <= 1.0)) throw std::invalid_argument("newton: ew_gamma must lie in (0,1]");
    if (max_iters < 1) throw std::invalid_argument("newton: max_iters must be >= 1");
    if (!(eta_max > 0.0 && eta_max < 1.0)) throw std::invalid_argument("newton: eta_max must lie in (0,1)");
}

double eisenstat_walker_eta(double norm_gk, double norm_gk_prev, double eta_prev, const NewtonParams& p)
{
    double eta = p.ew_gamma * std::pow(norm_gk / norm_gk_prev, p.ew_alpha);
    const double floor = p.ew_gamma * std::pow(eta_prev, p.ew_alpha);
    if (floor > 0.1) eta = std::max(eta, floor);
    return std::clamp(eta, 1e-8, p.eta_max);
}

NewtonResult newton_solve(const RhsFunction& G, const Vector& U0, const InnerProduct& ip, const NewtonParams& p,
                          const PreconditionerSetup& precond)
{
    p.validate();
    NewtonResult res;
    res.U = U0;
    Vector GU;
    G(res.U, GU);
    double norm = ip.norm(GU);
    res.residual0 = norm;
    res.residual = norm;
    if (!std::isfinite(norm)) {
        res.failure = "non-finite initial residual";
        return res;
    }
    if (norm == 0.0 || norm <= p.abs_tol) {
        res.converged = true;
        return res;
    }

    std::vector<double> history{norm};
    double eta = p.eta_initial;
    double norm_prev = norm;
    Vector U_trial, G_trial;

    for (int k = 0; k < p.max_iters; ++k) {
        if (k > 0) eta = eisenstat_walker_eta(norm, norm_prev, eta, p);
        const LinearOperator Jv = [&](const Vector& y, Vector& out) { fd_directional(G, res.U, GU, y, ip, out); };
        const LinearOperator M = precond ? precond(res.U, GU, Jv) : LinearOperator{};
        const GmresResult lin = gmres_solve(Jv, -GU, M, ip, eta, p.gmres);
        res.gmres_iterations += lin.iterations;

        // step, halved while the trial state is inadmissible
        double lambda = 1.0;
        bool accepted = false;
        for (int tries = 0; tries < 6 && !accepted; ++tries, lambda *= 0.5) {
            U_trial = res.U + lambda * lin.x;
            try {
                G(U_trial, G_trial);
                accepted = std::isfinite(ip.norm(G_trial));
            } catch (const InadmissibleState&) {
                accepted = false;
            }
        }
        ++res.iterations;
        if (!accepted) {
            res.failure = "no admissible Newton step";
            return res;
        }
        res.U.swap(U_trial);
        GU.swap(G_trial);
        norm_prev = norm;
        norm = ip.norm(GU);
        res.residual = norm;
        history.push_back(norm);

        if (norm < p.tol * res.residual0 || norm <= p.abs_tol) {
            res.converged = true;
            return res;
        }
        const std::size_t n = history.size();
        if (n > 3 && norm > (1.0 - 1e-3) * history[n - 4]) {
            res.failure = "Newton stagnated";
            return res;
        }
    }
    res.failure = "Newton reached max_iters";
    return res;
}

// ---------------------------------------------------------------------------
// integrators

double sdirk2_stability(double z)
{
    const double a = sdirk2_alpha();
    const double num = 1.0 + z * (1.0 - 2.0 * a) + z * z * (a * a - 2.0 * a + 0.5);
    const double den = (1.0 - a * z) * (1.0 - a * z);
    return num / den;
}

StepResult sdirk2_step(const ImplicitSystem& sys, const Vector& U, double dt, const NewtonParams& p)
{
    if (!(dt > 0.0)) throw std::invalid_argument("sdirk2: dt must be positive");
    const double alpha = sdirk2_alpha();
    const double adt = alpha * dt;
    StepResult out;

    auto solve_stage = [&](const Vector& rhs, StageStats& st) -> NewtonResult {
        const long dg0 = sys.dg_calls ? sys.dg_calls() : 0;
        const long fv0 = sys.fv_calls ? sys.fv_calls() : 0;
        Vector fx;
        const RhsFunction G = [&](const Vector& X, Vector& g) {
            sys.f(X, fx);
            g = X - adt * fx - rhs;
        };
        PreconditionerSetup setup;
        if (sys.precond)
            setup = [&](const Vector& X, const Vector&, const LinearOperator& Jv) { return sys.precond(X, adt, Jv); };
        NewtonResult r = newton_solve(G, rhs, sys.ip, p, setup);
        st.newton_iters = r.iterations;
        st.gmres_iters = r.gmres_iterations;
        st.residual = r.residual;
        st.dg_ops = (sys.dg_calls ? sys.dg_calls() : 0) - dg0;
        st.fv_ops = (sys.fv_calls ? sys.fv_calls() : 0) - fv0;
        return r;
    };

    NewtonResult s1 = solve_stage(U, out.stages[0]);
    if (!s1.converged) {
        out.ok = false;
        out.failure = "stage 1: " + s1.failure;
        out.U = s1.U;
        return out;
    }
    Vector f1;
    sys.f(s1.U, f1);
    const Vector rhs2 = U + (1.0 - alpha) * dt * f1;
    NewtonResult s2 = solve_stage(rhs2, out.stages[1]);
    out.U = std::move(s2.U);
    if (!s2.converged) {
        out.ok = false;
        out.failure = "stage 2: " + s2.failure;
    }
    return out;
}

Vector ssprk34_step(const RhsFunction& f, const Vector& U, double dt)
{
    Vector k;
    f(U, k);
    Vector u1 = U + 0.5 * dt * k;
    f(u1, k);
    Vector u2 = u1 + 0.5 * dt * k;
    f(u2, k);
    Vector u3 = (2.0 / 3.0) * U + (1.0 / 3.0) * u2 + (dt / 6.0) * k;
    f(u3, k);
    return u3 + 0.5 * dt * k;
}

}  // namespace dgmg
