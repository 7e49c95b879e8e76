#include "vpp/taylor_green.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vpp {

namespace {

constexpr double pi = std::numbers::pi;

double decay(double t, double mu) { return std::exp(-2.0 * pi * pi * mu * t); }

// Residual of the momentum equation for the x component at (x, y); the y
// component follows by symmetry of the vortex.
double residual_x(double x, double y, double t, double mu) {
    const double e = decay(t, mu);
    const double sx = std::sin(pi * x), cx = std::cos(pi * x);
    const double sy = std::sin(pi * y), cy = std::cos(pi * y);
    const double u = sx * cy * e, v = -cx * sy * e;
    const double dudt = -2.0 * pi * pi * mu * u;
    const double dudx = pi * cx * cy * e, dudy = -pi * sx * sy * e;
    const double lap = -2.0 * pi * pi * u;
    const double dpdx = -0.5 * pi * std::sin(2.0 * pi * x) * e * e;
    return dudt + u * dudx + v * dudy - mu * lap + dpdx;
}

double residual_y(double x, double y, double t, double mu) {
    const double e = decay(t, mu);
    const double sx = std::sin(pi * x), cx = std::cos(pi * x);
    const double sy = std::sin(pi * y), cy = std::cos(pi * y);
    const double u = sx * cy * e, v = -cx * sy * e;
    const double dvdt = -2.0 * pi * pi * mu * v;
    const double dvdx = pi * sx * sy * e, dvdy = -pi * cx * cy * e;
    const double lap = -2.0 * pi * pi * v;
    const double dpdy = -0.5 * pi * std::sin(2.0 * pi * y) * e * e;
    return dvdt + u * dvdx + v * dvdy - mu * lap + dpdy;
}

}  // namespace

double taylor_green_u(double x, double y, double t, double mu) {
    return std::sin(pi * x) * std::cos(pi * y) * decay(t, mu);
}

double taylor_green_v(double x, double y, double t, double mu) {
    return -std::cos(pi * x) * std::sin(pi * y) * decay(t, mu);
}

double taylor_green_p(double x, double y, double t, double mu) {
    const double e = decay(t, mu);
    return 0.25 * (std::cos(2.0 * pi * x) + std::cos(2.0 * pi * y)) * e * e;
}

TaylorGreen taylor_green(double t, const Grid& g, double mu) {
    if (std::abs(g.lx() - 1.0) > 1e-14 || std::abs(g.ly() - 1.0) > 1e-14)
        throw std::invalid_argument("Taylor-Green data is defined on the unit square only");

    TaylorGreen tg{VelocityField(g), PressureField(g), VelocityField(g), {}};
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i <= g.nx(); ++i) {
            const double x = g.node_x(i), y = g.cell_y(j);
            tg.v.u(i, j) = taylor_green_u(x, y, t, mu);
            tg.forcing.u(i, j) = residual_x(x, y, t, mu);
        }
    }
    for (int j = 0; j <= g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const double x = g.cell_x(i), y = g.node_y(j);
            tg.v.v(i, j) = taylor_green_v(x, y, t, mu);
            tg.forcing.v(i, j) = residual_y(x, y, t, mu);
        }
    }
    // Normal velocity vanishes on the walls analytically; drop the round-off.
    tg.v.zero_normal_boundary();
    tg.forcing.zero_normal_boundary();

    ScalarCellField p(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) p(i, j) = taylor_green_p(g.cell_x(i), g.cell_y(j), t, mu);
    tg.p = PressureField(std::move(p));

    tg.walls.bottom.resize(g.nx() + 1);
    tg.walls.top.resize(g.nx() + 1);
    for (int i = 0; i <= g.nx(); ++i) {
        tg.walls.bottom[i] = taylor_green_u(g.node_x(i), 0.0, t, mu);
        tg.walls.top[i] = taylor_green_u(g.node_x(i), 1.0, t, mu);
    }
    tg.walls.left.resize(g.ny() + 1);
    tg.walls.right.resize(g.ny() + 1);
    for (int j = 0; j <= g.ny(); ++j) {
        tg.walls.left[j] = taylor_green_v(0.0, g.node_y(j), t, mu);
        tg.walls.right[j] = taylor_green_v(1.0, g.node_y(j), t, mu);
    }
    return tg;
}

}  // namespace vpp
