#pragma once

#include "vpp/grid.hpp"
#include "vpp/obstacle.hpp"
#include "vpp/operators.hpp"
#include "vpp/params.hpp"

namespace vpp {

struct CoupledResult {
    VelocityField v;
    PressureField p;
    double residual = 0.0;  ///< relative residual of the dense solve
};

/// Reference step with the incompressibility constraint imposed exactly:
///   (v - v^n)/dt + B(v^n, v) - div(2 mu D(v)) + (1/eta) chi (v - v_s) + grad p = f
///   div v = 0,  mean(p) = 0
/// assembled densely (one multiplier column closes the system) and solved by
/// LU with partial pivoting. The time level is t_n -> t_n + dt. p_n only
/// fixes the grid: the pressure is fully implicit. Grids are limited to
/// 32 x 32; larger grids throw std::invalid_argument. A singular system
/// throws std::runtime_error.
CoupledResult coupled_step(const VelocityField& v_n, const PressureField& p_n, double t_n,
                           const VelocityField* forcing, const Obstacle& obstacle, const SchemeParams& params,
                           const WallVelocity& walls = {});

}  // namespace vpp
