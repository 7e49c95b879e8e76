#pragma once

#include <utility>
#include <vector>

#include "vpp/grid.hpp"

namespace vpp {

/// Prescribed tangential velocity on the four walls. Empty vectors mean a
/// homogeneous (no-slip) wall. `bottom`/`top` are indexed by u-face column
/// (size nx+1), `left`/`right` by v-face row (size ny+1).
struct WallVelocity {
    std::vector<double> bottom;
    std::vector<double> top;
    std::vector<double> left;
    std::vector<double> right;

    bool homogeneous() const {
        return bottom.empty() && top.empty() && left.empty() && right.empty();
    }
};

/// Face-weighted L2 inner product (every face weighted by hx*hy).
double inner(const VelocityField& a, const VelocityField& b);
/// Cell-weighted L2 inner product.
double inner(const ScalarCellField& a, const ScalarCellField& b);

/// Cell-centered divergence: net face flux divided by the cell area.
ScalarCellField divergence(const VelocityField& vel);

/// Face-centered gradient on interior faces; boundary faces are zero, so the
/// result satisfies the normal-zero boundary condition and
/// inner(gradient(p), w) == -inner(p, divergence(w)) whenever w has zero
/// normal boundary faces.
VelocityField gradient(const ScalarCellField& p);

/// div(2 mu D(w)) in stress form: normal stresses at cell centers, shear
/// stress at nodes with wall ghosts reflected about the prescribed tangential
/// velocity. Only interior faces of the result are populated.
VelocityField strain_divergence(const VelocityField& w, double mu, const WallVelocity& walls = {});

/// Skew-symmetric convection B(a, w) ~ (a.grad) w + 1/2 div(a) w.
///
/// Centered face-flux form restricted to its off-diagonal part, so that
/// inner(convection(a, w), w) == 0 for any advecting field a and any w with
/// zero normal boundary faces. Wall sides do not contribute: the advecting
/// normal velocity vanishes there for every admissible field.
VelocityField convection(const VelocityField& advecting, const VelocityField& w);

/// Discrete trilinear form b(a, w, z) = inner(B(a, w), z).
double trilinear(const VelocityField& a, const VelocityField& w, const VelocityField& z);

/// dv/dx - du/dy at interior nodes. Boundary nodes are left at zero: the
/// tangential wall velocity is not part of a normal-only field.
NodeField curl(const VelocityField& vel);

/// Squared discrete H1 seminorm of a Dirichlet field (same stencils and node
/// weights as strain_divergence).
double gradient_norm_sq(const VelocityField& w, const WallVelocity& walls = {});

/// Squared discrete norm of the symmetric gradient D(w), such that
/// inner(strain_divergence(w, mu), w) == -2 mu strain_norm_sq(w) for
/// homogeneous walls.
double strain_norm_sq(const VelocityField& w);

/// Velocity averaged to the center of cell (i, j).
std::pair<double, double> cell_velocity(const VelocityField& vel, int i, int j);

}  // namespace vpp
