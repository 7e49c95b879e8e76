#pragma once

#include <span>
#include <string>
#include <vector>

#include "vpp/grid.hpp"
#include "vpp/obstacle.hpp"
#include "vpp/params.hpp"

namespace vpp {

/// Per-step measurements. Every entry is finite and non-negative; the norms
/// are discrete L2 norms over the domain.
struct DiagnosticsRecord {
    int n = 0;
    double t = 0.0;
    double kinetic_energy = 0.0;           ///< 1/2 ||v^n||^2
    double div_norm = 0.0;                 ///< ||div v^n||
    double grad_norm = 0.0;                ///< ||grad v~^n||
    double pressure_norm = 0.0;            ///< ||p^n||
    double pressure_grad_norm = 0.0;       ///< ||grad p^n||
    double increment_norm = 0.0;           ///< ||v~^n - v^(n-1)||
    double pressure_increment_norm = 0.0;  ///< ||p^n - p^(n-1)||
    double correction_norm = 0.0;          ///< ||v^^n||
    double correction_hminus1 = 0.0;       ///< ||v^^n||_{H^-1}, 0 unless tracked
    double penalization_energy = 0.0;      ///< int chi |v~^n - v_s|^2
    double slip_error = 0.0;               ///< band estimate of the boundary integral of |v^n - v_s|^2
    bool slip_band_empty = false;
    int prediction_iterations = 0;
    int correction_iterations = 0;

    static std::string csv_header();
    /// Fixed-format row (%.17g) so identical runs give identical bytes.
    std::string csv_row() const;
};

double l2_norm(const ScalarCellField& f);
double l2_norm(const VelocityField& f);
/// Over interior nodes.
double l2_norm(const NodeField& f);

/// ||f||_{H^-1}: sqrt(inner(f, phi)) where -Delta phi = f with homogeneous
/// Dirichlet walls, solved with CG at rtol. Vector fields are handled
/// componentwise on the face lattices.
double h_minus1_norm(const ScalarCellField& f, double rtol = 1e-10);
double h_minus1_norm(const VelocityField& f, double rtol = 1e-10);

/// Discrete Poincare constant: ||f||_{H^-1} <= C_P ||f||_{L2} on this grid,
/// C_P = 1 / sqrt(lambda_min(-Delta_h)).
double poincare_constant(const Grid& grid);

struct SlipEstimate {
    double value = 0.0;
    bool empty_band = false;  ///< no band cells; value is then 0
};

/// Band quadrature of the boundary integral of |v - v_s|^2 over the body
/// boundary at time t: each band cell contributes its cell-center value
/// times cell_area / band_width, band_width being twice the cell diagonal.
SlipEstimate slip_error(const VelocityField& v, const Obstacle& obstacle, double t);

/// int chi |w - v_s|^2 with the face characteristic function.
double penalization_energy(const VelocityField& w, const Obstacle& obstacle, double t);

struct InitialNorms {
    double velocity_sq = 0.0;        ///< ||v^0||^2
    double pressure_sq = 0.0;        ///< ||p^0||^2
    double pressure_grad_sq = 0.0;   ///< ||grad p^0||^2
};

struct LedgerReport {
    /// Accumulated left-hand side of the discrete energy estimate after
    /// n = 0..N steps.
    std::vector<double> ledger;
    double max_ledger = 0.0;
    bool ledger_non_increasing = true;
    bool kinetic_non_increasing = true;
    double max_kinetic_increase = 0.0;  ///< largest relative step-to-step increase, 0 if none
    bool terms_finite_non_negative = true;
};

/// Accumulates, for n = 0..N,
///   ||v^n||^2 + dt eps ||p^n||^2 + dt^2 ||grad p^n||^2 + sum ||v~^(k+1) - v^k||^2
///   + mu sum dt ||grad v~^(k+1)||^2 + eps sum dt ||p^(k+1) - p^k||^2
///   + (2/eta) sum dt int chi |v~^(k+1) - v_s|^2
/// and flags monotonicity with relative tolerance `tol`.
LedgerReport energy_ledger_check(std::span<const DiagnosticsRecord> records, const SchemeParams& params,
                                 const InitialNorms& initial, bool has_obstacle, double tol = 1e-10);

}  // namespace vpp
