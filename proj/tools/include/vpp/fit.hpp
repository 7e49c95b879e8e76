#pragma once

#include <span>

namespace vpp {

struct PowerLawFit {
    double exponent = 0.0;   ///< slope of log y against log x
    double prefactor = 0.0;  ///< y ~ prefactor * x^exponent
    double residual = 0.0;   ///< root-mean-square residual in log y
};

/// Least-squares line through (log x, log y). Needs at least two points,
/// all positive, and two distinct abscissae.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace vpp
