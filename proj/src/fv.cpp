#include "dgmg/fv.hpp"

#include <stdexcept>
#include <string>

namespace dgmg
{

std::vector<BackgroundPoint> fv_background(const Atmosphere& atm, const GridHierarchy& h, int level)
{
    const auto& g = h.level(level);
    std::vector<BackgroundPoint> bg(g.n_cells());
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nx; ++i) bg[g.index(i, j)] = atm.at(h.center_x(level, i), h.center_z(level, j));
    return bg;
}

FvOperator::FvOperator(const GridHierarchy& h, int level, const FlowModel& model)
    : hierarchy_(h), level_(level), grid_(h.level(level)), model_(model)
{
    if (!model_.atmosphere) throw std::invalid_argument("fv: flow model without atmosphere");
    model_.constants.validate();
    model_.boundary.validate();
    const auto& dom = h.domain();
    const auto& c = model_.constants;
    const Atmosphere& atm = *model_.atmosphere;
    bg_cells_ = fv_background(atm, h, level);

    bg_xface_.resize(static_cast<std::size_t>(grid_.nx + 1) * grid_.nz);
    bg_xface_flux_.resize(bg_xface_.size());
    for (int j = 0; j < grid_.nz; ++j)
        for (int f = 0; f <= grid_.nx; ++f) {
            const std::size_t id = static_cast<std::size_t>(j) * (grid_.nx + 1) + f;
            bg_xface_[id] = atm.at(dom.x_min + f * grid_.dx, h.center_z(level, j));
            bg_xface_flux_[id] = hllc_flux(bg_xface_[id].U, bg_xface_[id].U, Normal{1.0, 0.0}, c);
        }
    bg_zface_.resize(static_cast<std::size_t>(grid_.nz + 1) * grid_.nx);
    bg_zface_flux_.resize(bg_zface_.size());
    for (int f = 0; f <= grid_.nz; ++f)
        for (int i = 0; i < grid_.nx; ++i) {
            const std::size_t id = static_cast<std::size_t>(f) * grid_.nx + i;
            bg_zface_[id] = atm.at(h.center_x(level, i), dom.z_min + f * grid_.dz);
            bg_zface_flux_[id] = hllc_flux(bg_zface_[id].U, bg_zface_[id].U, Normal{0.0, 1.0}, c);
        }
}

void FvOperator::apply(const Vector& up, Vector& out) const
{
    ++calls_;
    if (up.size() != size()) throw std::invalid_argument("fv: field size mismatch");
    const auto& g = grid_;
    const auto& c = model_.constants;
    const auto& bc = model_.boundary;
    const bool viscous = c.mu > 0.0;
    out.setZero(size());

    auto state = [&](int cell) -> State {
        const Eigen::Index i0 = static_cast<Eigen::Index>(cell) * 4;
        return {up[i0], up[i0 + 1], up[i0 + 2], up[i0 + 3]};
    };
    auto accumulate = [&](int cell, const State& s, double scale) {
        const Eigen::Index i0 = static_cast<Eigen::Index>(cell) * 4;
        for (int m = 0; m < 4; ++m) out[i0 + m] += scale * s[m];
    };

    for (int cell = 0; cell < g.n_cells(); ++cell) {
        const State u = state(cell);
        const State total = add(bg_cells_[cell].U, u);
        if (!(total[rho] > 0.0) || !(total[rho_theta] > 0.0))
            throw InadmissibleState("fv: inadmissible state in cell " + std::to_string(cell), cell);
        accumulate(cell, pert_source(u, c), 1.0);
    }

    // perturbation primitives for the two-point viscous flux
    std::vector<Primitives> q;
    if (viscous) {
        q.resize(g.n_cells());
        for (int cell = 0; cell < g.n_cells(); ++cell) q[cell] = perturbation_primitives(state(cell), bg_cells_[cell]);
    }
    auto viscous_flux = [&](int cl, int cr, const BackgroundPoint& bg, double h) -> State {
        const double k = c.mu * bg.U[rho] / h;
        return {0.0, k * (q[cr].u - q[cl].u), k * (q[cr].w - q[cl].w), k * (q[cr].theta - q[cl].theta)};
    };

    const Normal nx_pos{1.0, 0.0};
    const Normal nz_pos{0.0, 1.0};
    const double sx = 1.0 / g.dx;
    const double sz = 1.0 / g.dz;

    for (int j = 0; j < g.nz; ++j)
        for (int f = 0; f <= g.nx; ++f) {
            const bool first = f == 0;
            const bool last = f == g.nx;
            const std::size_t id = static_cast<std::size_t>(j) * (g.nx + 1) + f;
            const BackgroundPoint& bg = bg_xface_[id];
            if (first && bc.periodic_x()) continue;
            if ((first || last) && !bc.periodic_x()) {
                const int cell = g.index(first ? 0 : g.nx - 1, j);
                const Normal nout = first ? Normal{-1.0, 0.0} : nx_pos;
                const State u = state(cell);
                const State ghost = sub(mirror_state(add(bg.U, u), nout), bg.U);
                accumulate(cell, pert_hllc(u, ghost, bg, nout, c), -sx);
                continue;
            }
            const int cl = g.index(last ? g.nx - 1 : f - 1, j);
            const int cr = g.index(last ? 0 : f, j);
            State H = sub(hllc_flux(add(bg.U, state(cl)), add(bg.U, state(cr)), nx_pos, c), bg_xface_flux_[id]);
            if (viscous) H = sub(H, viscous_flux(cl, cr, bg, g.dx));
            accumulate(cl, H, -sx);
            accumulate(cr, H, sx);
        }

    for (int f = 0; f <= g.nz; ++f)
        for (int i = 0; i < g.nx; ++i) {
            const bool first = f == 0;
            const bool last = f == g.nz;
            const std::size_t id = static_cast<std::size_t>(f) * g.nx + i;
            const BackgroundPoint& bg = bg_zface_[id];
            if (first && bc.periodic_z()) continue;
            if ((first || last) && !bc.periodic_z()) {
                const int cell = g.index(i, first ? 0 : g.nz - 1);
                const Normal nout = first ? Normal{0.0, -1.0} : nz_pos;
                const State u = state(cell);
                const State ghost = sub(mirror_state(add(bg.U, u), nout), bg.U);
                accumulate(cell, pert_hllc(u, ghost, bg, nout, c), -sz);
                continue;
            }
            const int cb = g.index(i, last ? g.nz - 1 : f - 1);
            const int ct = g.index(i, last ? 0 : f);
            State H = sub(hllc_flux(add(bg.U, state(cb)), add(bg.U, state(ct)), nz_pos, c), bg_zface_flux_[id]);
            if (viscous) H = sub(H, viscous_flux(cb, ct, bg, g.dz));
            accumulate(cb, H, -sz);
            accumulate(ct, H, sz);
        }
}

FvLinearization::FvLinearization(const FvOperator& op, Vector state, double alpha_dt)
    : op_(&op), state_(std::move(state)), alpha_dt_(alpha_dt)
{
    if (state_.size() != op.size()) throw std::invalid_argument("fv: linearization state size mismatch");
    if (alpha_dt_ != 0.0) op.apply(state_, f_state_);
}

void FvLinearization::apply(const Vector& w, Vector& out) const
{
    if (alpha_dt_ == 0.0 || w.isZero(0.0)) {
        out = w;
        return;
    }
    fd_directional([this](const Vector& u, Vector& f) { op_->apply(u, f); }, state_, f_state_, w,
                   op_->inner_product(), out);
    out = w - alpha_dt_ * out;
}

void fv_residual_linop(const FvLinearization& lin, const Vector& w, Vector& out) { lin.apply(w, out); }

}  // namespace dgmg
