#pragma once

#include "vpp/grid.hpp"
#include "vpp/linalg.hpp"
#include "vpp/obstacle.hpp"
#include "vpp/params.hpp"

namespace vpp {

/// Sparse matrices over the interior-face unknowns of FaceLayout.
///
/// These are assembled directly from the stencils and are kept independent
/// of the matrix-free operators in operators.hpp, which serve as their
/// reference in the tests.

/// Convection block B(advecting, .) (skew-symmetric).
CsrMatrix assemble_convection(const FaceLayout& layout, const VelocityField& advecting);

/// -div(2 mu D(.)) with homogeneous Dirichlet walls (symmetric PSD).
CsrMatrix assemble_viscous(const FaceLayout& layout, double mu);

/// Prediction operator for the unknown predicted velocity:
///   (1/dt) I + B(v_prev, .) - div(2 mu D(.)) + (1/eta) chi(t_next) I.
/// Throws std::invalid_argument on non-finite v_prev.
CsrMatrix assemble_prediction(const Grid& grid, const Obstacle& obstacle, const SchemeParams& params,
                              const VelocityField& v_prev, double t_next);

/// Correction operator (eps/dt) I - grad(div(.)) with normal-zero walls,
/// discretized as the composition gradient o divergence. SPD for eps > 0.
CsrMatrix assemble_correction(const Grid& grid, const SchemeParams& params);
CsrMatrix assemble_correction(const Grid& grid, double eps_over_dt);

/// -Delta on an m x n lattice of spacing (hx, hy) with homogeneous Dirichlet
/// walls, SPD. Along a direction flagged `ghost` the wall sits half a spacing
/// beyond the outer unknowns (cell-like samples, reflected ghost); otherwise
/// it sits a full spacing beyond them (face samples lying on the wall).
CsrMatrix assemble_dirichlet_laplacian(int m, int n, double hx, double hy, bool ghost_x, bool ghost_y);

}  // namespace vpp
