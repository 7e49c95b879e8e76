#include "vpp/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vpp {

int SchemeParams::num_steps() const {
    // The small slack keeps T = N dt exact when T / dt rounds just below N.
    return static_cast<int>(std::floor(final_time / dt + 1e-9));
}

void SchemeParams::validate() const {
    auto positive = [](double x, const char* name) {
        if (!(std::isfinite(x) && x > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive and finite");
    };
    positive(dt, "dt");
    positive(lambda, "lambda");
    positive(eta, "eta");
    positive(mu, "mu");
    positive(final_time, "final_time");
    if (dt > final_time * (1.0 + 1e-12)) throw std::invalid_argument("dt must not exceed final_time");
    try {
        prediction.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("prediction solver: ") + e.what());
    }
    try {
        correction.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("correction solver: ") + e.what());
    }
}

}  // namespace vpp
