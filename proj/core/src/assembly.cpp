#include "vpp/assembly.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace vpp {

namespace {

// Collects the entries of one matrix row, silently dropping boundary faces
// (dof < 0), whose value is fixed to zero.
struct RowBuilder {
    std::vector<Triplet>& out;
    std::size_t row;

    void add(long dof, double value) const {
        if (dof >= 0) out.push_back({row, std::size_t(dof), value});
    }
};

}  // namespace

CsrMatrix assemble_convection(const FaceLayout& layout, const VelocityField& a) {
    const Grid& g = layout.grid();
    const int nx = g.nx(), ny = g.ny();
    const double cx = 0.5 / g.hx(), cy = 0.5 / g.hy();
    std::vector<Triplet> t;
    t.reserve(layout.size() * 4);

    for (int j = 0; j < ny; ++j) {
        for (int i = 1; i < nx; ++i) {
            const RowBuilder row{t, std::size_t(layout.u_dof(i, j))};
            row.add(layout.u_dof(i + 1, j), cx * 0.5 * (a.u(i, j) + a.u(i + 1, j)));
            row.add(layout.u_dof(i - 1, j), -cx * 0.5 * (a.u(i - 1, j) + a.u(i, j)));
            if (j + 1 < ny) row.add(layout.u_dof(i, j + 1), cy * 0.5 * (a.v(i - 1, j + 1) + a.v(i, j + 1)));
            if (j > 0) row.add(layout.u_dof(i, j - 1), -cy * 0.5 * (a.v(i - 1, j) + a.v(i, j)));
        }
    }
    for (int j = 1; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const RowBuilder row{t, std::size_t(layout.v_dof(i, j))};
            row.add(layout.v_dof(i, j + 1), cy * 0.5 * (a.v(i, j) + a.v(i, j + 1)));
            row.add(layout.v_dof(i, j - 1), -cy * 0.5 * (a.v(i, j - 1) + a.v(i, j)));
            if (i + 1 < nx) row.add(layout.v_dof(i + 1, j), cx * 0.5 * (a.u(i + 1, j - 1) + a.u(i + 1, j)));
            if (i > 0) row.add(layout.v_dof(i - 1, j), -cx * 0.5 * (a.u(i, j - 1) + a.u(i, j)));
        }
    }
    return CsrMatrix(layout.size(), layout.size(), std::move(t));
}

CsrMatrix assemble_viscous(const FaceLayout& layout, double mu) {
    const Grid& g = layout.grid();
    const int nx = g.nx(), ny = g.ny();
    const double hx = g.hx(), hy = g.hy();
    const double ax = 1.0 / (hx * hx), ay = 1.0 / (hy * hy), axy = 1.0 / (hx * hy);
    std::vector<Triplet> t;
    t.reserve(layout.size() * 9);

    // Row of -div(2 mu D(w)) at a u-face:
    //   -2mu/hx^2 (u_e - 2u + u_w) - (tau_n - tau_s)/hy
    // with tau = mu (du/dy + dv/dx) at nodes and wall ghosts u_ghost = -u.
    for (int j = 0; j < ny; ++j) {
        for (int i = 1; i < nx; ++i) {
            const RowBuilder row{t, std::size_t(layout.u_dof(i, j))};
            const long self = layout.u_dof(i, j);
            row.add(self, 4.0 * mu * ax);
            row.add(layout.u_dof(i + 1, j), -2.0 * mu * ax);
            row.add(layout.u_dof(i - 1, j), -2.0 * mu * ax);
            // north node (i, j+1): du/dy + dv/dx
            if (j + 1 == ny) {
                row.add(self, 2.0 * mu * ay);
            } else {
                row.add(layout.u_dof(i, j + 1), -mu * ay);
                row.add(self, mu * ay);
                row.add(layout.v_dof(i, j + 1), -mu * axy);
                row.add(layout.v_dof(i - 1, j + 1), mu * axy);
            }
            // south node (i, j)
            if (j == 0) {
                row.add(self, 2.0 * mu * ay);
            } else {
                row.add(self, mu * ay);
                row.add(layout.u_dof(i, j - 1), -mu * ay);
                row.add(layout.v_dof(i, j), mu * axy);
                row.add(layout.v_dof(i - 1, j), -mu * axy);
            }
        }
    }
    for (int j = 1; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const RowBuilder row{t, std::size_t(layout.v_dof(i, j))};
            const long self = layout.v_dof(i, j);
            row.add(self, 4.0 * mu * ay);
            row.add(layout.v_dof(i, j + 1), -2.0 * mu * ay);
            row.add(layout.v_dof(i, j - 1), -2.0 * mu * ay);
            // east node (i+1, j)
            if (i + 1 == nx) {
                row.add(self, 2.0 * mu * ax);
            } else {
                row.add(layout.v_dof(i + 1, j), -mu * ax);
                row.add(self, mu * ax);
                row.add(layout.u_dof(i + 1, j), -mu * axy);
                row.add(layout.u_dof(i + 1, j - 1), mu * axy);
            }
            // west node (i, j)
            if (i == 0) {
                row.add(self, 2.0 * mu * ax);
            } else {
                row.add(self, mu * ax);
                row.add(layout.v_dof(i - 1, j), -mu * ax);
                row.add(layout.u_dof(i, j), mu * axy);
                row.add(layout.u_dof(i, j - 1), -mu * axy);
            }
        }
    }
    return CsrMatrix(layout.size(), layout.size(), std::move(t));
}

CsrMatrix assemble_prediction(const Grid& grid, const Obstacle& obstacle, const SchemeParams& params,
                              const VelocityField& v_prev, double t_next) {
    if (!v_prev.all_finite()) throw std::invalid_argument("prediction: previous velocity has non-finite entries");
    if (!(v_prev.grid() == grid)) throw std::invalid_argument("prediction: velocity grid mismatch");
    const FaceLayout layout(grid);

    std::vector<Triplet> t;
    auto append = [&t](const CsrMatrix& m, double scale) {
        auto off = m.row_offsets();
        auto cols = m.col_indices();
        auto vals = m.values();
        for (std::size_t r = 0; r + 1 < off.size(); ++r)
            for (std::size_t k = off[r]; k < off[r + 1]; ++k) t.push_back({r, cols[k], scale * vals[k]});
    };
    append(assemble_convection(layout, v_prev), 1.0);
    append(assemble_viscous(layout, params.mu), 1.0);

    const double inv_dt = 1.0 / params.dt;
    const VelocityField chi = sample_chi_faces(obstacle, t_next, grid);
    const double inv_eta = obstacle.present() ? 1.0 / params.eta : 0.0;
    const std::vector<double> chi_dofs = layout.gather(chi);
    for (std::size_t k = 0; k < layout.size(); ++k) t.push_back({k, k, inv_dt + inv_eta * chi_dofs[k]});
    return CsrMatrix(layout.size(), layout.size(), std::move(t));
}

CsrMatrix assemble_correction(const Grid& grid, const SchemeParams& params) {
    return assemble_correction(grid, params.epsilon() / params.dt);
}

CsrMatrix assemble_correction(const Grid& grid, double eps_over_dt) {
    if (!(eps_over_dt > 0.0)) throw std::invalid_argument("correction operator needs eps > 0");
    const FaceLayout layout(grid);
    const int nx = grid.nx(), ny = grid.ny();
    const double hx = grid.hx(), hy = grid.hy();

    // Divergence stencil of cell (i, j) over interior faces.
    struct Entry {
        long dof;
        double coeff;
    };
    auto div_stencil = [&](int i, int j) {
        return std::array<Entry, 4>{Entry{layout.u_dof(i + 1, j), 1.0 / hx}, Entry{layout.u_dof(i, j), -1.0 / hx},
                                    Entry{layout.v_dof(i, j + 1), 1.0 / hy}, Entry{layout.v_dof(i, j), -1.0 / hy}};
    };

    std::vector<Triplet> t;
    t.reserve(layout.size() * 8);
    auto add_grad_div = [&](std::size_t row, int ip, int jp, int im, int jm, double h) {
        // -(div(cell_plus) - div(cell_minus)) / h
        for (const Entry& e : div_stencil(ip, jp))
            if (e.dof >= 0) t.push_back({row, std::size_t(e.dof), -e.coeff / h});
        for (const Entry& e : div_stencil(im, jm))
            if (e.dof >= 0) t.push_back({row, std::size_t(e.dof), e.coeff / h});
    };
    for (int j = 0; j < ny; ++j)
        for (int i = 1; i < nx; ++i) add_grad_div(std::size_t(layout.u_dof(i, j)), i, j, i - 1, j, hx);
    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i) add_grad_div(std::size_t(layout.v_dof(i, j)), i, j, i, j - 1, hy);
    for (std::size_t k = 0; k < layout.size(); ++k) t.push_back({k, k, eps_over_dt});
    return CsrMatrix(layout.size(), layout.size(), std::move(t));
}

CsrMatrix assemble_dirichlet_laplacian(int m, int n, double hx, double hy, bool ghost_x, bool ghost_y) {
    if (m < 1 || n < 1) throw std::invalid_argument("laplacian lattice must be non-empty");
    const double ax = 1.0 / (hx * hx), ay = 1.0 / (hy * hy);
    auto idx = [m](int i, int j) { return std::size_t(j) * m + i; };
    std::vector<Triplet> t;
    t.reserve(std::size_t(m) * n * 5);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            const std::size_t r = idx(i, j);
            double diag = 2.0 * ax + 2.0 * ay;
            if (i > 0) t.push_back({r, idx(i - 1, j), -ax}); else if (ghost_x) diag += ax;
            if (i + 1 < m) t.push_back({r, idx(i + 1, j), -ax}); else if (ghost_x) diag += ax;
            if (j > 0) t.push_back({r, idx(i, j - 1), -ay}); else if (ghost_y) diag += ay;
            if (j + 1 < n) t.push_back({r, idx(i, j + 1), -ay}); else if (ghost_y) diag += ay;
            t.push_back({r, r, diag});
        }
    }
    return CsrMatrix(std::size_t(m) * n, std::size_t(m) * n, std::move(t));
}

}  // namespace vpp
