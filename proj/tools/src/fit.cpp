#include "vpp/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace vpp {

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("power-law fit needs two or more points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw std::invalid_argument("power-law fit needs positive data");
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double det = n * sxx - sx * sx;
    if (!(std::abs(det) > 1e-300)) throw std::invalid_argument("power-law fit needs distinct abscissae");
    PowerLawFit fit;
    fit.exponent = (n * sxy - sx * sy) / det;
    const double intercept = (sy - fit.exponent * sx) / n;
    fit.prefactor = std::exp(intercept);
    double ss = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double r = std::log(y[k]) - intercept - fit.exponent * std::log(x[k]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace vpp
