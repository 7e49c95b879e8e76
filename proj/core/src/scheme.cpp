#include "vpp/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vpp/assembly.hpp"

namespace vpp {

FlowState initial_state(const VelocityField& v0, const ScalarCellField& p0) {
    if (!(v0.grid() == p0.grid())) throw std::invalid_argument("initial velocity and pressure grids differ");
    if (!v0.all_finite() || !p0.all_finite()) throw std::invalid_argument("initial data has non-finite entries");
    return FlowState{0, 0.0, v0, v0, VelocityField(v0.grid()), PressureField(p0)};
}

SolveResult<VelocityField> predict(const FlowState& state, const VelocityField* forcing, const WallVelocity& walls,
                                   const Obstacle& obstacle, const SchemeParams& params) {
    const Grid& g = state.v.grid();
    const double t_next = state.t + params.dt;
    const FaceLayout layout(g);
    const CsrMatrix a = assemble_prediction(g, obstacle, params, state.v, t_next);

    VelocityField rhs = (1.0 / params.dt) * state.v;
    rhs -= gradient(state.p);
    if (forcing) {
        if (!(forcing->grid() == g)) throw std::invalid_argument("forcing grid mismatch");
        rhs += *forcing;
    }
    if (obstacle.present()) {
        const VelocityField chi = sample_chi_faces(obstacle, t_next, g);
        const VelocityField vs = sample_solid_velocity(obstacle, t_next, g);
        auto add = [&](std::span<double> r, std::span<const double> c, std::span<const double> s) {
            for (std::size_t k = 0; k < r.size(); ++k) r[k] += c[k] * s[k] / params.eta;
        };
        add(rhs.u_values(), chi.u_values(), vs.u_values());
        add(rhs.v_values(), chi.v_values(), vs.v_values());
    }
    if (!walls.homogeneous()) rhs += strain_divergence(VelocityField(g), params.mu, walls);

    const std::vector<double> b = layout.gather(rhs);
    std::vector<double> x = layout.gather(state.v);
    const SolveReport report = solve(a, b, x, params.prediction);
    return {layout.scatter(x), report};
}

SolveResult<VelocityField> correct(const VelocityField& v_tilde, const SchemeParams& params) {
    const Grid& g = v_tilde.grid();
    const FaceLayout layout(g);
    const CsrMatrix a = assemble_correction(g, params);
    const std::vector<double> b = layout.gather(gradient(divergence(v_tilde)));
    std::vector<double> x(layout.size(), 0.0);
    const SolveReport report = solve(a, b, x, params.correction);
    return {layout.scatter(x), report};
}

PressureField update_pressure(const PressureField& p, const VelocityField& v_new, const SchemeParams& params) {
    ScalarCellField next = p;
    ScalarCellField div = divergence(v_new);
    div *= 1.0 / params.epsilon();
    next -= div;
    return PressureField(std::move(next));
}

StepFailure::StepFailure(int step, const std::string& stage, const NonConvergence& cause)
    : NonConvergence("step " + std::to_string(step) + ", " + stage + ": " + cause.what(), cause.residual(),
                     cause.iterations()),
      step_(step) {}

StepResult step(const FlowState& state, const ProblemData& data, const SchemeParams& params) {
    const Grid& g = state.v.grid();
    const int n_next = state.n + 1;
    const double t_next = params.dt * n_next;
    if (t_next > params.final_time + 1e-12 * std::max(1.0, params.final_time))
        throw std::invalid_argument("step would pass the final time");

    std::optional<VelocityField> forcing;
    if (data.forcing) forcing = data.forcing(t_next, g);
    const WallVelocity walls = data.walls ? data.walls(t_next, g) : WallVelocity{};

    SolveResult<VelocityField> pred{VelocityField(g), {}};
    try {
        pred = predict(state, forcing ? &*forcing : nullptr, walls, data.obstacle, params);
    } catch (const NonConvergence& e) {
        throw StepFailure(n_next, "prediction", e);
    }
    SolveResult<VelocityField> corr{VelocityField(g), {}};
    try {
        corr = correct(pred.field, params);
    } catch (const NonConvergence& e) {
        throw StepFailure(n_next, "correction", e);
    }

    FlowState next{n_next, t_next, pred.field + corr.field, std::move(pred.field), std::move(corr.field),
                   PressureField(g)};
    next.p = update_pressure(state.p, next.v, params);

    DiagnosticsRecord r;
    r.n = n_next;
    r.t = t_next;
    r.kinetic_energy = 0.5 * inner(next.v, next.v);
    r.div_norm = l2_norm(divergence(next.v));
    r.grad_norm = std::sqrt(gradient_norm_sq(next.v_tilde, walls));
    r.pressure_norm = l2_norm(next.p);
    r.pressure_grad_norm = l2_norm(gradient(next.p));
    r.increment_norm = l2_norm(next.v_tilde - state.v);
    r.pressure_increment_norm = l2_norm(next.p - state.p);
    r.correction_norm = l2_norm(next.v_hat);
    if (params.track_correction_hminus1) r.correction_hminus1 = h_minus1_norm(next.v_hat);
    if (data.obstacle.present()) {
        r.penalization_energy = penalization_energy(next.v_tilde, data.obstacle, t_next);
        const SlipEstimate slip = slip_error(next.v, data.obstacle, t_next);
        r.slip_error = slip.value;
        r.slip_band_empty = slip.empty_band;
    }
    r.prediction_iterations = pred.report.iterations;
    r.correction_iterations = corr.report.iterations;
    return {std::move(next), r};
}

RunResult run(const VelocityField& v0, const ScalarCellField& p0, const ProblemData& data,
              const SchemeParams& params, const std::vector<RecordSink>& sinks, const RunOptions& options) {
    params.validate();
    const Grid& g = v0.grid();
    if (data.obstacle.present()) {
        if (data.obstacle.final_time() + 1e-12 < params.dt * params.num_steps())
            throw std::invalid_argument("obstacle trajectory ends before the final step");
        data.obstacle.check_inside(g);
    }
    if (options.retain_snapshots && (g.nx() > 64 || g.ny() > 64))
        throw std::invalid_argument("snapshot retention is limited to grids up to 64 x 64");

    RunResult result{initial_state(v0, p0), {}, {}, 0.0, std::nullopt, std::nullopt};
    FlowState& state = result.final_state;
    result.initial.velocity_sq = inner(state.v, state.v);
    result.initial.pressure_sq = inner(state.p, state.p);
    const VelocityField gp0 = gradient(state.p);
    result.initial.pressure_grad_sq = inner(gp0, gp0);
    result.initial_divergence = l2_norm(divergence(state.v));

    if (options.retain_snapshots) {
        result.velocity_series.emplace(params.dt);
        result.pressure_series.emplace(params.dt);
    }
    const int steps = params.num_steps();
    result.records.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        if (options.retain_snapshots) {
            result.velocity_series->push_back(state.v);
            result.pressure_series->push_back(state.p);
        }
        StepResult s = step(state, data, params);
        state = std::move(s.state);
        for (const RecordSink& sink : sinks) sink(s.record);
        if (options.observer) options.observer(state);
        result.records.push_back(s.record);
    }
    return result;
}

}  // namespace vpp
