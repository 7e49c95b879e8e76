#include "vpp/operators.hpp"

#include <stdexcept>

namespace vpp {

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

double wall_value(const std::vector<double>& wall, int k) { return wall.empty() ? 0.0 : wall[k]; }

// Shear-rate pieces at node (i, j), with ghost reflection across the walls.
struct ShearStencil {
    const VelocityField& w;
    const WallVelocity& walls;
    int nx, ny;
    double hx, hy;

    double dudy(int i, int j) const {
        if (j == 0) return 2.0 * (w.u(i, 0) - wall_value(walls.bottom, i)) / hy;
        if (j == ny) return 2.0 * (wall_value(walls.top, i) - w.u(i, ny - 1)) / hy;
        return (w.u(i, j) - w.u(i, j - 1)) / hy;
    }
    double dvdx(int i, int j) const {
        if (i == 0) return 2.0 * (w.v(0, j) - wall_value(walls.left, j)) / hx;
        if (i == nx) return 2.0 * (wall_value(walls.right, j) - w.v(nx - 1, j)) / hx;
        return (w.v(i, j) - w.v(i - 1, j)) / hx;
    }
};

}  // namespace

double inner(const VelocityField& a, const VelocityField& b) {
    require_same_grid(a.grid(), b.grid());
    double s = 0.0;
    auto au = a.u_values(), bu = b.u_values();
    for (std::size_t k = 0; k < au.size(); ++k) s += au[k] * bu[k];
    auto av = a.v_values(), bv = b.v_values();
    for (std::size_t k = 0; k < av.size(); ++k) s += av[k] * bv[k];
    return s * a.grid().cell_area();
}

double inner(const ScalarCellField& a, const ScalarCellField& b) {
    require_same_grid(a.grid(), b.grid());
    double s = 0.0;
    auto av = a.values(), bv = b.values();
    for (std::size_t k = 0; k < av.size(); ++k) s += av[k] * bv[k];
    return s * a.grid().cell_area();
}

ScalarCellField divergence(const VelocityField& vel) {
    const Grid& g = vel.grid();
    const double hx = g.hx(), hy = g.hy();
    ScalarCellField div(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            div(i, j) = (vel.u(i + 1, j) - vel.u(i, j)) / hx + (vel.v(i, j + 1) - vel.v(i, j)) / hy;
    return div;
}

VelocityField gradient(const ScalarCellField& p) {
    const Grid& g = p.grid();
    const double hx = g.hx(), hy = g.hy();
    VelocityField grad(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 1; i < g.nx(); ++i) grad.u(i, j) = (p(i, j) - p(i - 1, j)) / hx;
    for (int j = 1; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) grad.v(i, j) = (p(i, j) - p(i, j - 1)) / hy;
    return grad;
}

VelocityField strain_divergence(const VelocityField& w, double mu, const WallVelocity& walls) {
    const Grid& g = w.grid();
    const int nx = g.nx(), ny = g.ny();
    const double hx = g.hx(), hy = g.hy();
    const ShearStencil shear{w, walls, nx, ny, hx, hy};

    auto tau_xx = [&](int i, int j) { return 2.0 * mu * (w.u(i + 1, j) - w.u(i, j)) / hx; };
    auto tau_yy = [&](int i, int j) { return 2.0 * mu * (w.v(i, j + 1) - w.v(i, j)) / hy; };
    auto tau_xy = [&](int i, int j) { return mu * (shear.dudy(i, j) + shear.dvdx(i, j)); };

    VelocityField out(g);
    for (int j = 0; j < ny; ++j)
        for (int i = 1; i < nx; ++i)
            out.u(i, j) = (tau_xx(i, j) - tau_xx(i - 1, j)) / hx + (tau_xy(i, j + 1) - tau_xy(i, j)) / hy;
    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.v(i, j) = (tau_xy(i + 1, j) - tau_xy(i, j)) / hx + (tau_yy(i, j) - tau_yy(i, j - 1)) / hy;
    return out;
}

VelocityField convection(const VelocityField& a, const VelocityField& w) {
    require_same_grid(a.grid(), w.grid());
    const Grid& g = a.grid();
    const int nx = g.nx(), ny = g.ny();
    const double cx = 0.5 / g.hx(), cy = 0.5 / g.hy();

    VelocityField out(g);
    for (int j = 0; j < ny; ++j) {
        for (int i = 1; i < nx; ++i) {
            const double fe = 0.5 * (a.u(i, j) + a.u(i + 1, j));
            const double fw = 0.5 * (a.u(i - 1, j) + a.u(i, j));
            double r = cx * (fe * w.u(i + 1, j) - fw * w.u(i - 1, j));
            if (j + 1 < ny) r += cy * 0.5 * (a.v(i - 1, j + 1) + a.v(i, j + 1)) * w.u(i, j + 1);
            if (j > 0) r -= cy * 0.5 * (a.v(i - 1, j) + a.v(i, j)) * w.u(i, j - 1);
            out.u(i, j) = r;
        }
    }
    for (int j = 1; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double fn = 0.5 * (a.v(i, j) + a.v(i, j + 1));
            const double fs = 0.5 * (a.v(i, j - 1) + a.v(i, j));
            double r = cy * (fn * w.v(i, j + 1) - fs * w.v(i, j - 1));
            if (i + 1 < nx) r += cx * 0.5 * (a.u(i + 1, j - 1) + a.u(i + 1, j)) * w.v(i + 1, j);
            if (i > 0) r -= cx * 0.5 * (a.u(i, j - 1) + a.u(i, j)) * w.v(i - 1, j);
            out.v(i, j) = r;
        }
    }
    return out;
}

double trilinear(const VelocityField& a, const VelocityField& w, const VelocityField& z) {
    return inner(convection(a, w), z);
}

NodeField curl(const VelocityField& vel) {
    const Grid& g = vel.grid();
    const double hx = g.hx(), hy = g.hy();
    NodeField out(g);
    for (int j = 1; j < g.ny(); ++j)
        for (int i = 1; i < g.nx(); ++i)
            out(i, j) = (vel.v(i, j) - vel.v(i - 1, j)) / hx - (vel.u(i, j) - vel.u(i, j - 1)) / hy;
    return out;
}

double gradient_norm_sq(const VelocityField& w, const WallVelocity& walls) {
    const Grid& g = w.grid();
    const int nx = g.nx(), ny = g.ny();
    const double hx = g.hx(), hy = g.hy();
    const ShearStencil shear{w, walls, nx, ny, hx, hy};

    double s = 0.0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double dudx = (w.u(i + 1, j) - w.u(i, j)) / hx;
            const double dvdy = (w.v(i, j + 1) - w.v(i, j)) / hy;
            s += dudx * dudx + dvdy * dvdy;
        }
    }
    // Wall nodes carry half weight.
    for (int j = 0; j <= ny; ++j) {
        const double weight = (j == 0 || j == ny) ? 0.5 : 1.0;
        for (int i = 1; i < nx; ++i) {
            const double d = shear.dudy(i, j);
            s += weight * d * d;
        }
    }
    for (int j = 1; j < ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const double weight = (i == 0 || i == nx) ? 0.5 : 1.0;
            const double d = shear.dvdx(i, j);
            s += weight * d * d;
        }
    }
    return s * g.cell_area();
}

double strain_norm_sq(const VelocityField& w) {
    const Grid& g = w.grid();
    const int nx = g.nx(), ny = g.ny();
    const double hx = g.hx(), hy = g.hy();
    const WallVelocity walls;
    const ShearStencil shear{w, walls, nx, ny, hx, hy};

    double s = 0.0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double dudx = (w.u(i + 1, j) - w.u(i, j)) / hx;
            const double dvdy = (w.v(i, j + 1) - w.v(i, j)) / hy;
            s += dudx * dudx + dvdy * dvdy;
        }
    }
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const bool corner = (i == 0 || i == nx) && (j == 0 || j == ny);
            if (corner) continue;
            const bool wall = i == 0 || i == nx || j == 0 || j == ny;
            const double dudy = (i == 0 || i == nx) ? 0.0 : shear.dudy(i, j);
            const double dvdx = (j == 0 || j == ny) ? 0.0 : shear.dvdx(i, j);
            const double e = dudy + dvdx;
            s += (wall ? 0.25 : 0.5) * e * e;
        }
    }
    return s * g.cell_area();
}

std::pair<double, double> cell_velocity(const VelocityField& vel, int i, int j) {
    return {0.5 * (vel.u(i, j) + vel.u(i + 1, j)), 0.5 * (vel.v(i, j) + vel.v(i, j + 1))};
}

}  // namespace vpp
