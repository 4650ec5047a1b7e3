#include "dgmg/dg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dgmg
{

// ---------------------------------------------------------------------------
// basis

namespace
{

double lagrange(const std::vector<double>& x, int a, double xi)
{
    double v = 1.0;
    for (int b = 0; b < static_cast<int>(x.size()); ++b)
        if (b != a) v *= (xi - x[b]) / (x[a] - x[b]);
    return v;
}

double lagrange_derivative(const std::vector<double>& x, int a, double xi)
{
    const int n = static_cast<int>(x.size());
    double s = 0.0;
    for (int m = 0; m < n; ++m) {
        if (m == a) continue;
        double t = 1.0 / (x[a] - x[m]);
        for (int b = 0; b < n; ++b)
            if (b != a && b != m) t *= (xi - x[b]) / (x[a] - x[b]);
        s += t;
    }
    return s;
}

}  // namespace

DgBasis::DgBasis(int k_) : k(k_), gl(gauss_legendre(k_))
{
    const int n = k + 1;
    D.resize(n, n);
    for (int c = 0; c < n; ++c) {
        double row = 0.0;
        for (int a = 0; a < n; ++a) {
            if (a == c) continue;
            D(c, a) = lagrange_derivative(gl.nodes, a, gl.nodes[c]);
            row += D(c, a);
        }
        D(c, c) = -row;  // derivative of the constant vanishes exactly
    }
    Dhat.resize(n, n);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) Dhat(a, c) = gl.weights[c] / gl.weights[a] * D(c, a);
    at0 = values(0.0);
    at1 = values(1.0);
    dat0 = derivatives(0.0);
    dat1 = derivatives(1.0);
}

Eigen::VectorXd DgBasis::values(double xi) const
{
    Eigen::VectorXd v(k + 1);
    for (int a = 0; a <= k; ++a) v(a) = lagrange(gl.nodes, a, xi);
    return v;
}

Eigen::VectorXd DgBasis::derivatives(double xi) const
{
    Eigen::VectorXd v(k + 1);
    for (int a = 0; a <= k; ++a) v(a) = lagrange_derivative(gl.nodes, a, xi);
    return v;
}

// ---------------------------------------------------------------------------
// space

DgSpace::DgSpace(const GridHierarchy& h, int level, int k)
    : hierarchy_(h), level_(level), grid_(h.level(level)), basis_(k)
{
}

double DgSpace::node_x(int cell, int a) const
{
    const int i = cell % grid_.nx;
    return hierarchy_.domain().x_min + (i + basis_.gl.nodes[a]) * grid_.dx;
}

double DgSpace::node_z(int cell, int b) const
{
    const int j = cell / grid_.nx;
    return hierarchy_.domain().z_min + (j + basis_.gl.nodes[b]) * grid_.dz;
}

InnerProduct DgSpace::inner_product() const
{
    Vector w(size());
    const int n = n1();
    const double scale = 1.0 / (4.0 * n_cells());
    for (int cell = 0; cell < n_cells(); ++cell)
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a)
                for (int m = 0; m < 4; ++m)
                    w[index(cell, b * n + a, m)] = basis_.gl.weights[a] * basis_.gl.weights[b] * scale;
    return InnerProduct(std::move(w));
}

State DgSpace::node_state(const Vector& U, int cell, int node) const
{
    const Eigen::Index i0 = index(cell, node, 0);
    return {U[i0], U[i0 + 1], U[i0 + 2], U[i0 + 3]};
}

void DgSpace::set_node_state(Vector& U, int cell, int node, const State& s) const
{
    const Eigen::Index i0 = index(cell, node, 0);
    for (int m = 0; m < 4; ++m) U[i0 + m] = s[m];
}

// ---------------------------------------------------------------------------
// operator

DgOperator::DgOperator(const DgSpace& space, const FlowModel& model, DgOperatorOptions opt)
    : space_(space), model_(model)
{
    if (!model_.atmosphere) throw std::invalid_argument("dg: flow model without atmosphere");
    model_.constants.validate();
    model_.boundary.validate();
    const int n = space_.n1();
    penalty_ = opt.penalty < 0.0 ? static_cast<double>(n * n) : opt.penalty;

    const auto& g = space_.grid();
    const auto& dom = space_.hierarchy().domain();
    const auto& nodes = space_.basis().gl.nodes;
    const auto& c = model_.constants;
    const Atmosphere& atm = *model_.atmosphere;

    bg_nodes_.resize(static_cast<std::size_t>(g.n_cells()) * space_.nodes_per_cell());
    bg_node_flux_.resize(bg_nodes_.size());
    for (int cell = 0; cell < g.n_cells(); ++cell)
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const std::size_t id = static_cast<std::size_t>(cell) * space_.nodes_per_cell() + b * n + a;
                bg_nodes_[id] = atm.at(space_.node_x(cell, a), space_.node_z(cell, b));
                bg_node_flux_[id] = flux_convective(bg_nodes_[id].U, c);
            }

    bg_xface_.resize(static_cast<std::size_t>(g.nx + 1) * g.nz * n);
    bg_xface_flux_.resize(bg_xface_.size());
    for (int j = 0; j < g.nz; ++j)
        for (int f = 0; f <= g.nx; ++f)
            for (int b = 0; b < n; ++b) {
                const std::size_t id = (static_cast<std::size_t>(j) * (g.nx + 1) + f) * n + b;
                bg_xface_[id] = atm.at(dom.x_min + f * g.dx, dom.z_min + (j + nodes[b]) * g.dz);
                bg_xface_flux_[id] = hllc_flux(bg_xface_[id].U, bg_xface_[id].U, Normal{1.0, 0.0}, c);
            }

    bg_zface_.resize(static_cast<std::size_t>(g.nz + 1) * g.nx * n);
    bg_zface_flux_.resize(bg_zface_.size());
    for (int f = 0; f <= g.nz; ++f)
        for (int i = 0; i < g.nx; ++i)
            for (int a = 0; a < n; ++a) {
                const std::size_t id = (static_cast<std::size_t>(f) * g.nx + i) * n + a;
                bg_zface_[id] = atm.at(dom.x_min + (i + nodes[a]) * g.dx, dom.z_min + f * g.dz);
                bg_zface_flux_[id] = hllc_flux(bg_zface_[id].U, bg_zface_[id].U, Normal{0.0, 1.0}, c);
            }
}

namespace
{

enum TraceSide { left = 0, right = 1, bottom = 2, top = 3 };

struct ViscousTrace
{
    std::array<double, 3> q{};    // perturbation primitives u', w', theta'
    std::array<double, 3> fvn{};  // viscous flux component normal to the face (+x or +z)
    double rho = 0.0;             // total density
};

}  // namespace

void DgOperator::apply(const Vector& Up, Vector& out) const
{
    ++calls_;
    const auto& g = space_.grid();
    const auto& B = space_.basis();
    const auto& c = model_.constants;
    const auto& bc = model_.boundary;
    const int n = space_.n1();
    const int npc = space_.nodes_per_cell();
    const bool viscous = c.mu > 0.0;
    const double dx = g.dx;
    const double dz = g.dz;
    const auto& w = B.gl.weights;

    if (Up.size() != space_.size()) throw std::invalid_argument("dg: field size mismatch");
    out.setZero(space_.size());

    std::vector<State> traces(static_cast<std::size_t>(g.n_cells()) * 4 * n);
    std::vector<ViscousTrace> vtraces(viscous ? traces.size() : 0);
    auto tr = [&](int cell, int side, int m) -> std::size_t {
        return (static_cast<std::size_t>(cell) * 4 + side) * n + m;
    };

    std::vector<State> U(npc), Fx(npc), Fz(npc);
    std::vector<std::array<double, 3>> q(npc);
    std::vector<FluxTensor> Fv(npc);

    for (int cell = 0; cell < g.n_cells(); ++cell) {
        const std::size_t base = static_cast<std::size_t>(cell) * npc;
        for (int node = 0; node < npc; ++node) {
            U[node] = space_.node_state(Up, cell, node);
            const BackgroundPoint& bg = bg_nodes_[base + node];
            const State total = add(bg.U, U[node]);
            if (!(total[rho] > 0.0) || !(total[rho_theta] > 0.0))
                throw InadmissibleState("dg: inadmissible state in cell " + std::to_string(cell), cell);
            const FluxTensor F = flux_convective(total, c);
            const FluxTensor& Fb = bg_node_flux_[base + node];
            Fx[node] = sub(F.x, Fb.x);
            Fz[node] = sub(F.z, Fb.z);
        }

        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const int node = b * n + a;
                State r = pert_source(U[node], c);
                for (int cc = 0; cc < n; ++cc) {
                    const double hx = B.Dhat(a, cc) / dx;
                    const double hz = B.Dhat(b, cc) / dz;
                    const State& fx = Fx[b * n + cc];
                    const State& fz = Fz[cc * n + a];
                    for (int m = 0; m < 4; ++m) r[m] += hx * fx[m] + hz * fz[m];
                }
                const Eigen::Index i0 = space_.index(cell, node, 0);
                for (int m = 0; m < 4; ++m) out[i0 + m] += r[m];
            }

        // traces of the perturbation state on the four sides
        for (int s = 0; s < n; ++s) {
            State l{}, rr{}, bo{}, to{};
            for (int t = 0; t < n; ++t) {
                const State& ul = U[s * n + t];  // row s (b = s), column t (a = t)
                const State& ub = U[t * n + s];  // column s (a = s), row t (b = t)
                for (int m = 0; m < 4; ++m) {
                    l[m] += B.at0[t] * ul[m];
                    rr[m] += B.at1[t] * ul[m];
                    bo[m] += B.at0[t] * ub[m];
                    to[m] += B.at1[t] * ub[m];
                }
            }
            traces[tr(cell, left, s)] = l;
            traces[tr(cell, right, s)] = rr;
            traces[tr(cell, bottom, s)] = bo;
            traces[tr(cell, top, s)] = to;
        }

        if (!viscous) continue;

        for (int node = 0; node < npc; ++node) {
            const Primitives p = perturbation_primitives(U[node], bg_nodes_[base + node]);
            q[node] = {p.u, p.w, p.theta};
        }
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const int node = b * n + a;
                std::array<double, 3> gx{}, gz{};
                for (int t = 0; t < n; ++t) {
                    const double dxw = B.D(a, t) / dx;
                    const double dzw = B.D(b, t) / dz;
                    for (int m = 0; m < 3; ++m) {
                        gx[m] += dxw * q[b * n + t][m];
                        gz[m] += dzw * q[t * n + a][m];
                    }
                }
                PrimitiveGradient gp;
                gp.u = {gx[0], gz[0]};
                gp.w = {gx[1], gz[1]};
                gp.theta = {gx[2], gz[2]};
                Fv[node] = pert_flux_viscous(U[node], gp, bg_nodes_[base + node], c);
            }
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const int node = b * n + a;
                State r{};
                for (int cc = 0; cc < n; ++cc) {
                    const double hx = B.Dhat(a, cc) / dx;
                    const double hz = B.Dhat(b, cc) / dz;
                    const State& fx = Fv[b * n + cc].x;
                    const State& fz = Fv[cc * n + a].z;
                    for (int m = 1; m < 4; ++m) r[m] += hx * fx[m] + hz * fz[m];
                }
                const Eigen::Index i0 = space_.index(cell, node, 0);
                for (int m = 1; m < 4; ++m) out[i0 + m] -= r[m];
            }
        for (int s = 0; s < n; ++s) {
            ViscousTrace vl, vr, vb, vt;
            for (int t = 0; t < n; ++t) {
                const int nrow = s * n + t;
                const int ncol = t * n + s;
                const double rrow = bg_nodes_[base + nrow].U[rho] + U[nrow][rho];
                const double rcol = bg_nodes_[base + ncol].U[rho] + U[ncol][rho];
                vl.rho += B.at0[t] * rrow;
                vr.rho += B.at1[t] * rrow;
                vb.rho += B.at0[t] * rcol;
                vt.rho += B.at1[t] * rcol;
                for (int m = 0; m < 3; ++m) {
                    vl.q[m] += B.at0[t] * q[nrow][m];
                    vr.q[m] += B.at1[t] * q[nrow][m];
                    vb.q[m] += B.at0[t] * q[ncol][m];
                    vt.q[m] += B.at1[t] * q[ncol][m];
                    vl.fvn[m] += B.at0[t] * Fv[nrow].x[m + 1];
                    vr.fvn[m] += B.at1[t] * Fv[nrow].x[m + 1];
                    vb.fvn[m] += B.at0[t] * Fv[ncol].z[m + 1];
                    vt.fvn[m] += B.at1[t] * Fv[ncol].z[m + 1];
                }
            }
            vtraces[tr(cell, left, s)] = vl;
            vtraces[tr(cell, right, s)] = vr;
            vtraces[tr(cell, bottom, s)] = vb;
            vtraces[tr(cell, top, s)] = vt;
        }
    }

    // Adds coeff(t) * H to node t along the face of `cell`; `along_x` selects
    // whether the face nodes run in x (bottom/top faces) or in z.
    auto scatter = [&](int cell, int s, bool face_is_vertical, const Eigen::VectorXd& coeff,
                       double scale, const State& H, int m_begin) {
        for (int t = 0; t < n; ++t) {
            const int node = face_is_vertical ? s * n + t : t * n + s;
            const double f = coeff[t] * scale / w[t];
            const Eigen::Index i0 = space_.index(cell, node, 0);
            for (int m = m_begin; m < 4; ++m) out[i0 + m] += f * H[m];
        }
    };

    auto viscous_face = [&](int cellL, int sideL, int cellR, int sideR, int s, bool vertical, double h) {
        const ViscousTrace& L = vtraces[tr(cellL, sideL, s)];
        const ViscousTrace& R = vtraces[tr(cellR, sideR, s)];
        const double rho_avg = 0.5 * (L.rho + R.rho);
        State Hv{}, sym{};
        for (int m = 0; m < 3; ++m) {
            const double jump = R.q[m] - L.q[m];
            Hv[m + 1] = 0.5 * (L.fvn[m] + R.fvn[m]) + penalty_ / h * c.mu * rho_avg * jump;
            sym[m + 1] = -0.5 * c.mu * rho_avg * jump;
        }
        const State mHv{0.0, -Hv[1], -Hv[2], -Hv[3]};
        scatter(cellL, s, vertical, B.at1, 1.0 / h, Hv, 1);
        scatter(cellL, s, vertical, B.dat1, 1.0 / (h * h), sym, 1);
        scatter(cellR, s, vertical, B.at0, 1.0 / h, mHv, 1);
        scatter(cellR, s, vertical, B.dat0, 1.0 / (h * h), sym, 1);
    };

    const Normal nx_pos{1.0, 0.0};
    const Normal nz_pos{0.0, 1.0};

    // vertical faces (normal along x)
    for (int j = 0; j < g.nz; ++j)
        for (int f = 0; f <= g.nx; ++f) {
            const bool first = f == 0;
            const bool last = f == g.nx;
            if (first && bc.periodic_x()) continue;
            if ((first || last) && !bc.periodic_x()) {
                const int cell = g.index(first ? 0 : g.nx - 1, j);
                const Normal nout = first ? Normal{-1.0, 0.0} : nx_pos;
                const int side = first ? left : right;
                for (int s = 0; s < n; ++s) {
                    const BackgroundPoint& bg = bg_xface_[(static_cast<std::size_t>(j) * (g.nx + 1) + f) * n + s];
                    const State& Uin = traces[tr(cell, side, s)];
                    const State ghost = sub(mirror_state(add(bg.U, Uin), nout), bg.U);
                    const State H = pert_hllc(Uin, ghost, bg, nout, c);
                    const State mH{-H[0], -H[1], -H[2], -H[3]};
                    scatter(cell, s, true, first ? B.at0 : B.at1, 1.0 / dx, mH, 0);
                }
                continue;
            }
            const int cellL = g.index(last ? g.nx - 1 : f - 1, j);
            const int cellR = g.index(last ? 0 : f, j);
            for (int s = 0; s < n; ++s) {
                const std::size_t id = (static_cast<std::size_t>(j) * (g.nx + 1) + f) * n + s;
                const BackgroundPoint& bg = bg_xface_[id];
                const State H = sub(hllc_flux(add(bg.U, traces[tr(cellL, right, s)]),
                                              add(bg.U, traces[tr(cellR, left, s)]), nx_pos, c),
                                    bg_xface_flux_[id]);
                const State mH{-H[0], -H[1], -H[2], -H[3]};
                scatter(cellL, s, true, B.at1, 1.0 / dx, mH, 0);
                scatter(cellR, s, true, B.at0, 1.0 / dx, H, 0);
                if (viscous) viscous_face(cellL, right, cellR, left, s, true, dx);
            }
        }

    // horizontal faces (normal along z)
    for (int f = 0; f <= g.nz; ++f)
        for (int i = 0; i < g.nx; ++i) {
            const bool first = f == 0;
            const bool last = f == g.nz;
            if (first && bc.periodic_z()) continue;
            if ((first || last) && !bc.periodic_z()) {
                const int cell = g.index(i, first ? 0 : g.nz - 1);
                const Normal nout = first ? Normal{0.0, -1.0} : nz_pos;
                const int side = first ? bottom : top;
                for (int s = 0; s < n; ++s) {
                    const BackgroundPoint& bg = bg_zface_[(static_cast<std::size_t>(f) * g.nx + i) * n + s];
                    const State& Uin = traces[tr(cell, side, s)];
                    const State ghost = sub(mirror_state(add(bg.U, Uin), nout), bg.U);
                    const State H = pert_hllc(Uin, ghost, bg, nout, c);
                    const State mH{-H[0], -H[1], -H[2], -H[3]};
                    scatter(cell, s, false, first ? B.at0 : B.at1, 1.0 / dz, mH, 0);
                }
                continue;
            }
            const int cellB = g.index(i, last ? g.nz - 1 : f - 1);
            const int cellT = g.index(i, last ? 0 : f);
            for (int s = 0; s < n; ++s) {
                const std::size_t id = (static_cast<std::size_t>(f) * g.nx + i) * n + s;
                const BackgroundPoint& bg = bg_zface_[id];
                const State H = sub(hllc_flux(add(bg.U, traces[tr(cellB, top, s)]),
                                              add(bg.U, traces[tr(cellT, bottom, s)]), nz_pos, c),
                                    bg_zface_flux_[id]);
                const State mH{-H[0], -H[1], -H[2], -H[3]};
                scatter(cellB, s, false, B.at1, 1.0 / dz, mH, 0);
                scatter(cellT, s, false, B.at0, 1.0 / dz, H, 0);
                if (viscous) viscous_face(cellB, top, cellT, bottom, s, false, dz);
            }
        }
}

double DgOperator::stable_dt(const Vector& Up, double cfl) const
{
    const auto& g = space_.grid();
    const auto& c = model_.constants;
    double rate = 0.0;
    for (int cell = 0; cell < g.n_cells(); ++cell)
        for (int node = 0; node < space_.nodes_per_cell(); ++node) {
            const State total = add(bg_nodes_[static_cast<std::size_t>(cell) * space_.nodes_per_cell() + node].U,
                                    space_.node_state(Up, cell, node));
            const double r = max_wave_speed(total, Normal{1.0, 0.0}, c) / g.dx +
                             max_wave_speed(total, Normal{0.0, 1.0}, c) / g.dz;
            rate = std::max(rate, r);
        }
    return cfl / (rate * (2 * space_.k() + 1));
}

// ---------------------------------------------------------------------------
// field utilities

Vector l2_project(const std::function<State(double, double)>& f, const DgSpace& space)
{
    Vector U(space.size());
    const int n = space.n1();
    for (int cell = 0; cell < space.n_cells(); ++cell)
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a)
                space.set_node_state(U, cell, b * n + a, f(space.node_x(cell, a), space.node_z(cell, b)));
    return U;
}

State evaluate(const DgSpace& space, const Vector& U, int cell, double xi, double eta)
{
    const Eigen::VectorXd lx = space.basis().values(xi);
    const Eigen::VectorXd lz = space.basis().values(eta);
    const int n = space.n1();
    State s{};
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
            const double wgt = lx[a] * lz[b];
            const State v = space.node_state(U, cell, b * n + a);
            for (int m = 0; m < 4; ++m) s[m] += wgt * v[m];
        }
    return s;
}

double total_mass(const DgSpace& space, const Vector& U, int comp)
{
    const int n = space.n1();
    const auto& w = space.basis().gl.weights;
    double total = 0.0;
    for (int cell = 0; cell < space.n_cells(); ++cell) {
        double cellsum = 0.0;
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) cellsum += w[a] * w[b] * U[space.index(cell, b * n + a, comp)];
        total += cellsum;
    }
    return total * space.grid().cell_area();
}

}  // namespace dgmg
