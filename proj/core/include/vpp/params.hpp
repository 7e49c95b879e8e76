#pragma once

#include "vpp/linalg.hpp"

namespace vpp {

/// Time-stepping parameters. The divergence penalty is never an input: it is
/// always epsilon = lambda * dt.
struct SchemeParams {
    double dt = 0.01;
    double lambda = 1.0;
    double eta = 1e-6;  ///< obstacle penalty
    double mu = 1e-2;   ///< dynamic viscosity
    double final_time = 1.0;

    SolverConfig prediction{SolverMethod::bicgstab, 1e-8, 5000};
    SolverConfig correction{SolverMethod::conjugate_gradient, 1e-10, 20000};

    /// Also compute the H^-1 norm of the correction every step (one extra
    /// Poisson solve per velocity component).
    bool track_correction_hminus1 = false;

    double epsilon() const { return lambda * dt; }
    /// Number of steps N = floor(T / dt).
    int num_steps() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

}  // namespace vpp
