#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vpp/config.hpp"
#include "vpp/fit.hpp"
#include "vpp/scheme.hpp"

namespace vpp {

/// Initial state and time-dependent data described by a config.
struct ProblemSetup {
    VelocityField v0;
    ScalarCellField p0;
    ProblemData data;
    /// True when the exact solution is the Taylor-Green vortex (initial
    /// data, forcing and walls all taylor_green).
    bool exact_taylor_green = false;
};

/// Throws IoError / std::invalid_argument when a data file is unusable.
ProblemSetup build_problem(const RunConfig& cfg);

struct RunSummary {
    int index = 0;
    double dt = 0.0;
    double lambda = 0.0;
    double eps = 0.0;
    double eta = 0.0;
    double mu = 0.0;
    int steps = 0;
    double initial_divergence = 0.0;
    double final_kinetic_energy = 0.0;
    double divergence_l2 = 0.0;          ///< (sum dt ||div v||^2)^{1/2}
    double correction_hminus1_sum = 0.0; ///< sum dt ||v^||_{H^-1}^2, 0 unless tracked
    double slip_integral = 0.0;          ///< sum dt slip_error
    double penalization_integral = 0.0;  ///< sum dt int chi |v~ - v_s|^2
    std::optional<double> velocity_error;  ///< (sum dt ||v - v_exact||^2)^{1/2}
    double max_ledger = 0.0;
    bool ledger_non_increasing = true;
    long prediction_iterations = 0;
    long correction_iterations = 0;
};

struct ExperimentOptions {
    std::filesystem::path out_dir = ".";
    std::ostream* log = nullptr;  ///< progress lines; null for quiet
};

/// One run: writes the per-step CSV (cfg.output.csv inside out_dir), field
/// dumps and translation.csv as configured. On failure after output started,
/// writes out_dir/PARTIAL_OUTPUT with the reason and rethrows.
RunSummary run_single(const RunConfig& cfg, const ExperimentOptions& options);

struct SweepFits {
    std::optional<PowerLawFit> divergence;    ///< divergence_l2 vs eps
    std::optional<PowerLawFit> correction;    ///< correction_hminus1_sum vs dt
    std::optional<PowerLawFit> velocity_error;///< velocity_error vs dt
    std::optional<PowerLawFit> slip;          ///< slip_integral vs eta
    std::optional<PowerLawFit> penalization;  ///< penalization_integral vs eta
};

struct SweepResult {
    std::vector<RunSummary> runs;
    SweepFits fits;
};

/// Every expanded config runs in isolation (run_<k>.csv per run), then
/// summary.csv gets one row per run with the fitted exponents and their
/// residuals repeated on each row. Fits are left empty when the abscissa
/// does not vary or some value is not positive.
SweepResult run_sweep(const RunConfig& cfg, const ExperimentOptions& options);

SweepFits fit_sweep(const std::vector<RunSummary>& runs);

std::string summary_csv_header();
std::string summary_csv_row(const RunSummary& run, const SweepFits& fits);

}  // namespace vpp
