#pragma once

#include <random>

#include "vpp/grid.hpp"

namespace vpp {

using Rng = std::mt19937_64;

/// Uniform samples in [-1, 1] on every face. With `normal_zero` the
/// boundary faces are cleared.
VelocityField random_velocity(const Grid& grid, Rng& rng, bool normal_zero = true);
ScalarCellField random_cell_field(const Grid& grid, Rng& rng);
/// Random cell field with its mean removed.
PressureField random_pressure(const Grid& grid, Rng& rng);
/// Discrete curl of a random node stream function that vanishes on the
/// boundary nodes: divergence-free to round-off with zero normal boundary
/// faces. Only the lowest `modes` x `modes` sine modes are excited when
/// modes > 0; otherwise every node value is random.
VelocityField random_divergence_free(const Grid& grid, Rng& rng, int modes = 0);

}  // namespace vpp
