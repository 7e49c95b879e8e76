#pragma once

#include <string>
#include <vector>

namespace vpp {

struct CriterionResult {
    std::string id;     ///< "A1" ... "A8"
    std::string title;
    bool pass = false;
    std::string detail;  ///< measured values, one line
    double seconds = 0.0;

    /// "PASS A1 <title>: <detail> [<seconds>s]"
    std::string line() const;
};

CriterionResult check_divergence_scaling();      // A1
CriterionResult check_energy_stability();        // A2
CriterionResult check_manufactured_convergence();// A3
CriterionResult check_splitting_limit();         // A4
CriterionResult check_slip_scaling();            // A5
CriterionResult check_rigid_interior();          // A6
CriterionResult check_translation_estimator();   // A7
CriterionResult check_operator_algebra();        // A8

/// Runs the listed criteria ("A1".."A8"; empty means all) in order.
/// Unknown ids throw std::invalid_argument.
std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& ids = {});

}  // namespace vpp
