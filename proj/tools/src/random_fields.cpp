#include "vpp/random_fields.hpp"

#include <cmath>
#include <numbers>

namespace vpp {

namespace {

double uniform(Rng& rng) { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

}  // namespace

VelocityField random_velocity(const Grid& grid, Rng& rng, bool normal_zero) {
    VelocityField f(grid);
    for (double& x : f.u_values()) x = uniform(rng);
    for (double& x : f.v_values()) x = uniform(rng);
    if (normal_zero) f.zero_normal_boundary();
    return f;
}

ScalarCellField random_cell_field(const Grid& grid, Rng& rng) {
    ScalarCellField f(grid);
    for (double& x : f.values()) x = uniform(rng);
    return f;
}

PressureField random_pressure(const Grid& grid, Rng& rng) { return PressureField(random_cell_field(grid, rng)); }

VelocityField random_divergence_free(const Grid& grid, Rng& rng, int modes) {
    const int nx = grid.nx(), ny = grid.ny();
    NodeField psi(grid);
    if (modes > 0) {
        const double pi = std::numbers::pi;
        for (int a = 1; a <= modes; ++a) {
            for (int b = 1; b <= modes; ++b) {
                const double c = uniform(rng) / (a * b);
                for (int j = 1; j < ny; ++j)
                    for (int i = 1; i < nx; ++i)
                        psi(i, j) += c * std::sin(a * pi * i / nx) * std::sin(b * pi * j / ny);
            }
        }
    } else {
        for (int j = 1; j < ny; ++j)
            for (int i = 1; i < nx; ++i) psi(i, j) = uniform(rng);
    }
    VelocityField f(grid);
    for (int j = 0; j < ny; ++j)
        for (int i = 1; i < nx; ++i) f.u(i, j) = (psi(i, j + 1) - psi(i, j)) / grid.hy();
    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i) f.v(i, j) = -(psi(i + 1, j) - psi(i, j)) / grid.hx();
    return f;
}

}  // namespace vpp
