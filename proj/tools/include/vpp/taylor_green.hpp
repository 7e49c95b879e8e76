#pragma once

#include "vpp/grid.hpp"
#include "vpp/operators.hpp"

namespace vpp {

/// Decaying Taylor-Green vortex on the unit square,
///   v = (sin(pi x) cos(pi y), -cos(pi x) sin(pi y)) exp(-2 pi^2 mu t)
///   p = (cos(2 pi x) + cos(2 pi y)) / 4 exp(-4 pi^2 mu t)
/// sampled on the MAC grid.
struct TaylorGreen {
    VelocityField v;
    PressureField p;
    /// dv/dt + (v.grad) v - mu Lap v + grad p, each term evaluated
    /// analytically at the faces. The terms cancel, so this is zero up to
    /// round-off.
    VelocityField forcing;
    /// Tangential velocity of the vortex on the walls (it is not no-slip).
    WallVelocity walls;
};

/// Throws std::invalid_argument unless the grid covers the unit square.
TaylorGreen taylor_green(double t, const Grid& grid, double mu);

/// Pointwise values used by the samplers.
double taylor_green_u(double x, double y, double t, double mu);
double taylor_green_v(double x, double y, double t, double mu);
double taylor_green_p(double x, double y, double t, double mu);

}  // namespace vpp
