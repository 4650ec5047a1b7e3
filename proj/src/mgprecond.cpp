#include "dgmg/mgprecond.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace dgmg
{

// ---------------------------------------------------------------------------
// configuration

MgConfig MgConfig::parse(const std::string& key)
{
    if (key.size() < 2 || key.compare(0, 2, "mg") != 0) {
        const std::size_t pos = (!key.empty() && key[0] == 'm') ? 1 : 0;
        throw MgConfigError("mg key must start with \"mg\"", pos);
    }
    int digits[6];
    for (int i = 0; i < 6; ++i) {
        const std::size_t pos = 2 + i;
        if (pos >= key.size()) throw MgConfigError("mg key: expected 6 smoothing digits", pos);
        if (!std::isdigit(static_cast<unsigned char>(key[pos])))
            throw MgConfigError("mg key: expected a digit", pos);
        digits[i] = key[pos] - '0';
    }
    if (key.size() < 9) throw MgConfigError("mg key: missing cycle type V or W", 8);
    MgConfig cfg;
    if (key[8] == 'V')
        cfg.cycle = CycleType::V;
    else if (key[8] == 'W')
        cfg.cycle = CycleType::W;
    else
        throw MgConfigError("mg key: cycle type must be V or W", 8);
    if (key.size() > 9) throw MgConfigError("mg key: trailing characters", 9);
    cfg.a = digits[0];
    cfg.b = digits[1];
    cfg.c = digits[2];
    cfg.d = digits[3];
    cfg.e = digits[4];
    cfg.f = digits[5];
    return cfg;
}

std::string MgConfig::key() const
{
    std::string s = "mg";
    for (int v : {a, b, c, d, e, f}) s += std::to_string(v);
    s += cycle == CycleType::V ? 'V' : 'W';
    return s;
}

void MgConfig::validate() const
{
    for (int v : {a, b, c, d, e, f})
        if (v < 0) throw std::invalid_argument("mg: smoothing counts must be >= 0");
    if (!(pseudo_cfl > 0.0)) throw std::invalid_argument("mg: pseudo_cfl must be positive");
    if (smoother_stages < 1) throw std::invalid_argument("mg: smoother needs at least one stage");
}

// ---------------------------------------------------------------------------
// grid transfer

Vector restrict_field(const GridHierarchy& h, int fine_level, const Vector& u)
{
    if (fine_level < 1) throw std::out_of_range("restrict: level 0 has no coarser grid");
    const auto& fg = h.level(fine_level);
    const auto& cg = h.level(fine_level - 1);
    if (u.size() != static_cast<Eigen::Index>(fg.n_cells()) * 4)
        throw std::invalid_argument("restrict: field size mismatch");
    Vector out = Vector::Zero(static_cast<Eigen::Index>(cg.n_cells()) * 4);
    // equal child volumes: |q|/|E| = 1/4
    for (int j = 0; j < fg.nz; ++j)
        for (int i = 0; i < fg.nx; ++i) {
            const Eigen::Index src = static_cast<Eigen::Index>(fg.index(i, j)) * 4;
            const Eigen::Index dst = static_cast<Eigen::Index>(cg.index(i / 2, j / 2)) * 4;
            for (int m = 0; m < 4; ++m) out[dst + m] += 0.25 * u[src + m];
        }
    return out;
}

Vector prolong_field(const GridHierarchy& h, int coarse_level, const Vector& u)
{
    const auto& cg = h.level(coarse_level);
    const auto& fg = h.level(coarse_level + 1);
    if (u.size() != static_cast<Eigen::Index>(cg.n_cells()) * 4)
        throw std::invalid_argument("prolong: field size mismatch");
    Vector out(static_cast<Eigen::Index>(fg.n_cells()) * 4);
    for (int j = 0; j < fg.nz; ++j)
        for (int i = 0; i < fg.nx; ++i) {
            const Eigen::Index dst = static_cast<Eigen::Index>(fg.index(i, j)) * 4;
            const Eigen::Index src = static_cast<Eigen::Index>(cg.index(i / 2, j / 2)) * 4;
            for (int m = 0; m < 4; ++m) out[dst + m] = u[src + m];
        }
    return out;
}

// ---------------------------------------------------------------------------
// smoother

double pseudo_time_step(const State& total, double hx, double hz, double mu, double alpha_dt, double cfl,
                        const PhysConstants& c)
{
    const double lx = max_wave_speed(total, Normal{1.0, 0.0}, c);
    const double lz = max_wave_speed(total, Normal{0.0, 1.0}, c);
    const double rate = (lx + 2.0 * mu / hx) / hx + (lz + 2.0 * mu / hz) / hz;
    return cfl / (1.0 + alpha_dt * rate);
}

std::vector<double> fv_pseudo_steps(const FvOperator& op, const Vector& state, double alpha_dt, double cfl)
{
    const auto& g = op.grid();
    const auto& c = op.model().constants;
    std::vector<double> dtau(g.n_cells());
    for (int cell = 0; cell < g.n_cells(); ++cell) {
        const Eigen::Index i0 = static_cast<Eigen::Index>(cell) * 4;
        const State u{state[i0], state[i0 + 1], state[i0 + 2], state[i0 + 3]};
        dtau[cell] = pseudo_time_step(add(op.cell_background(cell).U, u), g.dx, g.dz, c.mu, alpha_dt, cfl, c);
    }
    return dtau;
}

Vector expand_steps(const std::vector<double>& per_cell, int entries_per_cell)
{
    Vector v(static_cast<Eigen::Index>(per_cell.size()) * entries_per_cell);
    for (std::size_t cell = 0; cell < per_cell.size(); ++cell)
        v.segment(static_cast<Eigen::Index>(cell) * entries_per_cell, entries_per_cell).setConstant(per_cell[cell]);
    return v;
}

namespace
{

// Low-storage s-stage pseudo-time scheme with coefficients 1/(s-i+1); s = 1 is explicit Euler.
void smooth_impl(const LinearOperator& A, Vector& x, const Vector& b, int n_steps, const Vector& dtau, int stages)
{
    Vector Ax(x.size());
    Vector x0;
    for (int step = 0; step < n_steps; ++step) {
        if (stages > 1) x0 = x;
        for (int s = 1; s <= stages; ++s) {
            A(x, Ax);
            const double coeff = 1.0 / (stages - s + 1);
            if (stages > 1)
                x = x0 + coeff * dtau.cwiseProduct(b - Ax);
            else
                x += dtau.cwiseProduct(b - Ax);
        }
    }
}

}  // namespace

void smooth(const LinearOperator& A, Vector& x, const Vector& b, int n_steps, const Vector& dtau)
{
    smooth_impl(A, x, b, n_steps, dtau, 1);
}

void smooth(const FvLinearization& lin, Vector& x, const Vector& b, int n_steps, const Vector& dtau)
{
    smooth([&lin](const Vector& w, Vector& out) { lin.apply(w, out); }, x, b, n_steps, dtau);
}

// ---------------------------------------------------------------------------
// multigrid

MultigridSolver::MultigridSolver(const GridHierarchy& h, int finest_level, const FlowModel& model, MgConfig cfg)
    : hierarchy_(h), finest_(finest_level), cfg_(cfg)
{
    cfg_.validate();
    if (finest_level < 0 || finest_level >= h.n_levels())
        throw std::out_of_range("multigrid: finest level outside the hierarchy");
    levels_.resize(finest_level + 1);
    for (int l = 0; l <= finest_level; ++l) levels_[l].op = std::make_unique<FvOperator>(h, l, model);
}

void MultigridSolver::set_state(const Vector& finest_state, double alpha_dt)
{
    Vector s = finest_state;
    for (int l = finest_; l >= 0; --l) {
        Level& L = levels_[l];
        L.lin = std::make_unique<FvLinearization>(*L.op, s, alpha_dt);
        L.dtau = expand_steps(fv_pseudo_steps(*L.op, s, alpha_dt, cfg_.pseudo_cfl), 4);
        if (l > 0) s = restrict_field(hierarchy_, l, s);
    }
}

void MultigridSolver::counts(int level, int& pre, int& post) const
{
    pre = level == finest_ ? cfg_.c : cfg_.e;
    post = level == finest_ ? cfg_.d : cfg_.f;
}

void MultigridSolver::cycle(int level, Vector& x, const Vector& b) const
{
    const Level& L = levels_.at(level);
    if (!L.lin) throw std::logic_error("multigrid: set_state was not called");
    const LinearOperator A = [&L](const Vector& w, Vector& out) { L.lin->apply(w, out); };
    int pre = 0;
    int post = 0;
    counts(level, pre, post);

    if (level == 0) {
        smooth_impl(A, x, b, std::max(2, pre + post), L.dtau, cfg_.smoother_stages);
        return;
    }

    smooth_impl(A, x, b, pre, L.dtau, cfg_.smoother_stages);

    Vector Ax(x.size());
    A(x, Ax);
    const Vector r = restrict_field(hierarchy_, level, Ax - b);
    Vector v = Vector::Zero(r.size());
    const int repeats = cfg_.cycle == CycleType::V ? 1 : 2;
    for (int rep = 0; rep < repeats; ++rep) cycle(level - 1, v, r);
    x -= prolong_field(hierarchy_, level - 1, v);

    smooth_impl(A, x, b, post, L.dtau, cfg_.smoother_stages);
}

long MultigridSolver::fv_calls() const
{
    long n = 0;
    for (const auto& L : levels_) n += L.op->calls();
    return n;
}

void MultigridSolver::reset_calls() const
{
    for (const auto& L : levels_) L.op->reset_calls();
}

// ---------------------------------------------------------------------------
// DG-level preconditioner

MultigridPreconditioner::MultigridPreconditioner(const DgOperator& dg, const SubgridMap& subgrid, MgConfig cfg,
                                                 bool mass_fix)
    : dg_(&dg),
      subgrid_(subgrid),
      cfg_(cfg),
      mass_fix_(mass_fix),
      transfer_(dg.space(), subgrid),
      mg_(dg.space().hierarchy(), subgrid.fv_level, dg.model(), cfg)
{
}

void MultigridPreconditioner::setup(const Vector& U, double alpha_dt, LinearOperator outer)
{
    outer_ = std::move(outer);
    mg_.set_state(transfer_.to_fv(U, mass_fix_), alpha_dt);

    if (cfg_.a > 0 || cfg_.b > 0) {
        const DgSpace& sp = dg_->space();
        const auto& c = dg_->model().constants;
        const double scale = 2.0 * sp.k() + 1.0;
        const double hx = sp.grid().dx / scale;
        const double hz = sp.grid().dz / scale;
        std::vector<double> per_cell(sp.n_cells());
        for (int cell = 0; cell < sp.n_cells(); ++cell) {
            double dt_min = std::numeric_limits<double>::infinity();
            for (int node = 0; node < sp.nodes_per_cell(); ++node) {
                const State total = add(dg_->node_background(cell, node).U, sp.node_state(U, cell, node));
                dt_min = std::min(dt_min, pseudo_time_step(total, hx, hz, c.mu, alpha_dt, cfg_.pseudo_cfl, c));
            }
            per_cell[cell] = dt_min;
        }
        dg_dtau_ = expand_steps(per_cell, sp.nodes_per_cell() * 4);
    }
}

void MultigridPreconditioner::apply(const Vector& y, Vector& x) const
{
    if ((cfg_.a > 0 || cfg_.b > 0) && !outer_)
        throw std::logic_error("preconditioner: setup was not called");
    x.setZero(y.size());
    Vector rhs = y;
    if (cfg_.a > 0) {
        smooth_impl(outer_, x, y, cfg_.a, dg_dtau_, cfg_.smoother_stages);
        Vector Gx(x.size());
        outer_(x, Gx);
        rhs = y - Gx;
    }
    const Vector b = transfer_.to_fv(rhs, mass_fix_);
    Vector xf = Vector::Zero(b.size());
    mg_.cycle(mg_.finest_level(), xf, b);
    x += transfer_.to_dg(xf);
    if (cfg_.b > 0) smooth_impl(outer_, x, y, cfg_.b, dg_dtau_, cfg_.smoother_stages);
}

}  // namespace dgmg
