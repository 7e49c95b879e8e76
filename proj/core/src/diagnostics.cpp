#include "vpp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "vpp/assembly.hpp"
#include "vpp/operators.hpp"

namespace vpp {

std::string DiagnosticsRecord::csv_header() {
    return "n,t,kinetic_energy,div_norm,grad_norm,pressure_norm,pressure_grad_norm,increment_norm,"
           "pressure_increment_norm,correction_norm,correction_hminus1,penalization_energy,slip_error,"
           "slip_band_empty,prediction_iterations,correction_iterations";
}

std::string DiagnosticsRecord::csv_row() const {
    char buf[640];
    std::snprintf(buf, sizeof buf,
                  "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d", n, t,
                  kinetic_energy, div_norm, grad_norm, pressure_norm, pressure_grad_norm, increment_norm,
                  pressure_increment_norm, correction_norm, correction_hminus1, penalization_energy, slip_error,
                  slip_band_empty ? 1 : 0, prediction_iterations, correction_iterations);
    return buf;
}

double l2_norm(const ScalarCellField& f) { return std::sqrt(inner(f, f)); }

double l2_norm(const VelocityField& f) { return std::sqrt(inner(f, f)); }

double l2_norm(const NodeField& f) {
    const Grid& g = f.grid();
    double s = 0.0;
    for (int j = 1; j < g.ny(); ++j)
        for (int i = 1; i < g.nx(); ++i) s += f(i, j) * f(i, j);
    return std::sqrt(s * g.cell_area());
}

namespace {

// sum(f * (-Delta)^-1 f) * cell_area on one lattice.
double dual_pairing(const CsrMatrix& laplacian, std::span<const double> f, double cell_area, double rtol) {
    std::vector<double> phi(f.size(), 0.0);
    SolverConfig cfg{SolverMethod::conjugate_gradient, rtol, 100000};
    solve(laplacian, f, phi, cfg);
    return std::max(0.0, dot(f, phi)) * cell_area;
}

}  // namespace

double h_minus1_norm(const ScalarCellField& f, double rtol) {
    const Grid& g = f.grid();
    const CsrMatrix lap = assemble_dirichlet_laplacian(g.nx(), g.ny(), g.hx(), g.hy(), true, true);
    return std::sqrt(dual_pairing(lap, f.values(), g.cell_area(), rtol));
}

double h_minus1_norm(const VelocityField& f, double rtol) {
    const Grid& g = f.grid();
    const FaceLayout layout(g);
    const std::vector<double> dofs = layout.gather(f);
    const std::span<const double> all(dofs);
    const CsrMatrix lap_u = assemble_dirichlet_laplacian(g.nx() - 1, g.ny(), g.hx(), g.hy(), false, true);
    const CsrMatrix lap_v = assemble_dirichlet_laplacian(g.nx(), g.ny() - 1, g.hx(), g.hy(), true, false);
    const double su = dual_pairing(lap_u, all.subspan(0, layout.num_u()), g.cell_area(), rtol);
    const double sv = dual_pairing(lap_v, all.subspan(layout.num_u()), g.cell_area(), rtol);
    return std::sqrt(su + sv);
}

double poincare_constant(const Grid& grid) {
    // Smallest eigenvalue of the Dirichlet 5-point Laplacian; the same on the
    // cell lattice and on both face lattices.
    const double pi = std::numbers::pi;
    const double sx = std::sin(pi * grid.hx() / (2.0 * grid.lx())) * 2.0 / grid.hx();
    const double sy = std::sin(pi * grid.hy() / (2.0 * grid.ly())) * 2.0 / grid.hy();
    return 1.0 / std::sqrt(sx * sx + sy * sy);
}

SlipEstimate slip_error(const VelocityField& v, const Obstacle& obstacle, double t) {
    const Grid& g = v.grid();
    const std::vector<CellIndex> band = boundary_band(obstacle, t, g);
    if (band.empty()) return {0.0, true};
    const double band_width = 2.0 * std::hypot(g.hx(), g.hy());
    const double weight = g.cell_area() / band_width;
    double s = 0.0;
    for (const CellIndex& c : band) {
        const auto [u, w] = cell_velocity(v, c.i, c.j);
        const Vec2 vs = obstacle.solid_velocity_at({g.cell_x(c.i), g.cell_y(c.j)}, t);
        s += ((u - vs.x) * (u - vs.x) + (w - vs.y) * (w - vs.y)) * weight;
    }
    return {s, false};
}

double penalization_energy(const VelocityField& w, const Obstacle& obstacle, double t) {
    if (!obstacle.present()) return 0.0;
    const Grid& g = w.grid();
    const VelocityField chi = sample_chi_faces(obstacle, t, g);
    const VelocityField vs = sample_solid_velocity(obstacle, t, g);
    double s = 0.0;
    auto accumulate = [&s](std::span<const double> c, std::span<const double> a, std::span<const double> b) {
        for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * (a[k] - b[k]) * (a[k] - b[k]);
    };
    accumulate(chi.u_values(), w.u_values(), vs.u_values());
    accumulate(chi.v_values(), w.v_values(), vs.v_values());
    return s * g.cell_area();
}

LedgerReport energy_ledger_check(std::span<const DiagnosticsRecord> records, const SchemeParams& params,
                                 const InitialNorms& initial, bool has_obstacle, double tol) {
    const double dt = params.dt;
    const double eps = params.epsilon();
    const double penalty = has_obstacle ? 2.0 / params.eta : 0.0;

    LedgerReport report;
    auto check = [&report](double x) {
        if (!std::isfinite(x) || x < 0.0) report.terms_finite_non_negative = false;
    };
    check(initial.velocity_sq);
    check(initial.pressure_sq);
    check(initial.pressure_grad_sq);

    double accumulated = 0.0;
    report.ledger.push_back(initial.velocity_sq + dt * eps * initial.pressure_sq +
                            dt * dt * initial.pressure_grad_sq);
    double previous_kinetic = 0.5 * initial.velocity_sq;
    for (const DiagnosticsRecord& r : records) {
        for (double x : {r.kinetic_energy, r.div_norm, r.grad_norm, r.pressure_norm, r.pressure_grad_norm,
                         r.increment_norm, r.pressure_increment_norm, r.penalization_energy, r.slip_error})
            check(x);
        accumulated += r.increment_norm * r.increment_norm + params.mu * dt * r.grad_norm * r.grad_norm +
                       eps * dt * r.pressure_increment_norm * r.pressure_increment_norm +
                       penalty * dt * r.penalization_energy;
        const double state = 2.0 * r.kinetic_energy + dt * eps * r.pressure_norm * r.pressure_norm +
                             dt * dt * r.pressure_grad_norm * r.pressure_grad_norm;
        const double value = state + accumulated;
        const double last = report.ledger.back();
        if (value > last * (1.0 + tol)) report.ledger_non_increasing = false;
        report.ledger.push_back(value);

        if (previous_kinetic > 0.0) {
            const double rel = (r.kinetic_energy - previous_kinetic) / previous_kinetic;
            report.max_kinetic_increase = std::max(report.max_kinetic_increase, rel);
            if (rel > tol) report.kinetic_non_increasing = false;
        } else if (r.kinetic_energy > 0.0) {
            report.kinetic_non_increasing = false;
            report.max_kinetic_increase = std::numeric_limits<double>::infinity();
        }
        previous_kinetic = r.kinetic_energy;
    }
    for (double x : report.ledger) {
        check(x);
        report.max_ledger = std::max(report.max_ledger, x);
    }
    return report;
}

}  // namespace vpp
