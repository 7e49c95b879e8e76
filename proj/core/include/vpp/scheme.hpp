#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vpp/diagnostics.hpp"
#include "vpp/grid.hpp"
#include "vpp/linalg.hpp"
#include "vpp/nikolskii.hpp"
#include "vpp/obstacle.hpp"
#include "vpp/operators.hpp"
#include "vpp/params.hpp"

namespace vpp {

/// State at t = n dt. After a step v == v_tilde + v_hat as stored.
struct FlowState {
    int n = 0;
    double t = 0.0;
    VelocityField v;
    VelocityField v_tilde;
    VelocityField v_hat;
    PressureField p;
};

/// n = 0, v_tilde = v0, v_hat = 0. The pressure is mean-projected.
FlowState initial_state(const VelocityField& v0, const ScalarCellField& p0);

/// Body force sampled on faces at time t.
using ForcingFn = std::function<VelocityField(double t, const Grid& grid)>;
/// Tangential wall velocity at time t.
using WallFn = std::function<WallVelocity(double t, const Grid& grid)>;

/// Time-dependent data of a run. Empty functions stand for zero data.
struct ProblemData {
    ForcingFn forcing;
    WallFn walls;
    Obstacle obstacle = Obstacle::none();
};

template <class Field>
struct SolveResult {
    Field field;
    SolveReport report;
};

/// Predicted velocity at t_next: solves
///   (v~ - v^n)/dt + B(v^n, v~) - div(2 mu D(v~)) + (1/eta) chi (v~ - v_s) = f - grad p^n
/// with v~ = walls on the boundary. `forcing` may be null.
SolveResult<VelocityField> predict(const FlowState& state, const VelocityField* forcing, const WallVelocity& walls,
                                   const Obstacle& obstacle, const SchemeParams& params);

/// Velocity correction: (eps/dt) v^ - grad div(v^) = grad div(v~), v^.nu = 0.
SolveResult<VelocityField> correct(const VelocityField& v_tilde, const SchemeParams& params);

/// p^n - div(v_new) / eps, mean-projected.
PressureField update_pressure(const PressureField& p, const VelocityField& v_new, const SchemeParams& params);

/// Solver failure during a step, tagged with the step being computed.
class StepFailure : public NonConvergence {
public:
    StepFailure(int step, const std::string& stage, const NonConvergence& cause);
    int step() const { return step_; }

private:
    int step_;
};

struct StepResult {
    FlowState state;
    DiagnosticsRecord record;
};

/// One full step t^n -> t^(n+1) with its diagnostics.
StepResult step(const FlowState& state, const ProblemData& data, const SchemeParams& params);

using RecordSink = std::function<void(const DiagnosticsRecord&)>;

struct RunOptions {
    /// Keep v^0..v^(N-1) and p^0..p^(N-1) as step functions in time.
    /// Only allowed on grids up to 64 x 64.
    bool retain_snapshots = false;
    /// Called with every new state, after the sinks.
    std::function<void(const FlowState&)> observer;
};

struct RunResult {
    FlowState final_state;
    std::vector<DiagnosticsRecord> records;
    InitialNorms initial;
    double initial_divergence = 0.0;  ///< ||div v^0||
    std::optional<FieldSeries<VelocityField>> velocity_series;
    std::optional<FieldSeries<ScalarCellField>> pressure_series;
};

/// N = floor(T / dt) steps from (v0, p0). Every record is handed to each
/// sink as soon as the step completes. Throws StepFailure on the first solver
/// failure and std::invalid_argument on invalid parameters or data.
RunResult run(const VelocityField& v0, const ScalarCellField& p0, const ProblemData& data,
              const SchemeParams& params, const std::vector<RecordSink>& sinks = {}, const RunOptions& options = {});

}  // namespace vpp
