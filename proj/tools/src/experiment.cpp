#include "vpp/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "vpp/field_io.hpp"
#include "vpp/io_error.hpp"
#include "vpp/nikolskii.hpp"
#include "vpp/taylor_green.hpp"

namespace vpp {

namespace {

std::string number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Line-oriented text file that reports every failed write.
class TextSink {
public:
    explicit TextSink(const std::filesystem::path& path) : path_(path), out_(path) {
        if (!out_) throw IoError("cannot write " + path.string());
    }
    void line(const std::string& s) {
        out_ << s << '\n';
        if (!out_) throw IoError("error while writing " + path_.string());
    }
    void close() {
        out_.close();
        if (!out_) throw IoError("error while closing " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

void mark_partial(const std::filesystem::path& dir, const std::string& reason) {
    std::ofstream marker(dir / "PARTIAL_OUTPUT");
    marker << reason << '\n';  // best effort: the original error is what gets reported
}

template <class Fn>
auto guarded(const std::filesystem::path& dir, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        mark_partial(dir, e.what());
        throw;
    }
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

RunSummary execute(const RunConfig& cfg, const ExperimentOptions& options, int index, const std::string& csv_name,
                   const std::string& field_prefix) {
    cfg.validate();
    const Grid g = cfg.grid();
    const ProblemSetup setup = build_problem(cfg);
    const SchemeParams& p = cfg.params;

    RunSummary s;
    s.index = index;
    s.dt = p.dt;
    s.lambda = p.lambda;
    s.eps = p.epsilon();
    s.eta = p.eta;
    s.mu = p.mu;

    TextSink csv(options.out_dir / csv_name);
    csv.line(DiagnosticsRecord::csv_header());

    auto dump = [&](const FlowState& st) {
        char name[64];
        std::snprintf(name, sizeof name, "%s%06d.vtk", field_prefix.c_str(), st.n);
        write_fields_vtk(options.out_dir / name, st.v, st.p, st.n, st.t);
    };
    const int every = cfg.output.field_every;
    if (every > 0) dump(initial_state(setup.v0, setup.p0));

    double error_sq = 0.0;
    RunOptions run_options;
    run_options.retain_snapshots = cfg.output.snapshots;
    run_options.observer = [&](const FlowState& st) {
        if (every > 0 && st.n % every == 0) dump(st);
        if (setup.exact_taylor_green) {
            const VelocityField e = st.v - taylor_green(st.t, g, p.mu).v;
            error_sq += p.dt * inner(e, e);
        }
    };
    const RunResult result =
        run(setup.v0, setup.p0, setup.data, p, {[&](const DiagnosticsRecord& r) { csv.line(r.csv_row()); }},
            run_options);
    csv.close();

    s.steps = static_cast<int>(result.records.size());
    s.initial_divergence = result.initial_divergence;
    double div_sq = 0.0;
    for (const DiagnosticsRecord& r : result.records) {
        div_sq += p.dt * r.div_norm * r.div_norm;
        s.correction_hminus1_sum += p.dt * r.correction_hminus1 * r.correction_hminus1;
        s.slip_integral += p.dt * r.slip_error;
        s.penalization_integral += p.dt * r.penalization_energy;
        s.prediction_iterations += r.prediction_iterations;
        s.correction_iterations += r.correction_iterations;
    }
    s.divergence_l2 = std::sqrt(div_sq);
    s.final_kinetic_energy = result.records.empty() ? 0.5 * inner(setup.v0, setup.v0)
                                                    : result.records.back().kinetic_energy;
    if (setup.exact_taylor_green) s.velocity_error = std::sqrt(error_sq);
    const LedgerReport ledger = energy_ledger_check(result.records, p, result.initial, setup.data.obstacle.present());
    s.max_ledger = ledger.max_ledger;
    s.ledger_non_increasing = ledger.ledger_non_increasing;

    if (result.velocity_series) {
        const FieldSeries<VelocityField>& series = *result.velocity_series;
        TextSink tr(options.out_dir / (field_prefix + "translation.csv"));
        tr.line("h,integral_l2,norm_l2,integral_hminus1,norm_hminus1");
        for (double h = 0.25 * p.dt; h < series.span(); h *= 2.0) {
            const TranslationIntegrals l2 = nikolskii_translation(series, h, SeriesNorm::l2);
            const TranslationIntegrals hm = nikolskii_translation(series, h, SeriesNorm::hminus1);
            tr.line(number(h) + "," + number(l2.integral) + "," + number(l2.l2) + "," + number(hm.integral) + "," +
                    number(hm.l2));
        }
        tr.close();
    }

    if (options.log) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "run %d: dt=%.6g lambda=%.6g eta=%.6g mu=%.6g steps=%d  KE=%.6e  ||div||_L2L2=%.6e\n", index,
                      p.dt, p.lambda, p.eta, p.mu, s.steps, s.final_kinetic_energy, s.divergence_l2);
        *options.log << buf << std::flush;
    }
    return s;
}

std::optional<PowerLawFit> try_fit(const std::vector<RunSummary>& runs, double RunSummary::*x,
                                   auto y_of) {
    std::vector<double> xs, ys;
    std::set<double> distinct;
    for (const RunSummary& r : runs) {
        const std::optional<double> y = y_of(r);
        if (!y || !(*y > 0.0) || !std::isfinite(*y)) return std::nullopt;
        xs.push_back(r.*x);
        ys.push_back(*y);
        distinct.insert(r.*x);
    }
    if (distinct.size() < 2) return std::nullopt;
    return fit_power_law(xs, ys);
}

}  // namespace

ProblemSetup build_problem(const RunConfig& cfg) {
    const Grid g = cfg.grid();
    const double mu = cfg.params.mu;
    ProblemSetup s{VelocityField(g), ScalarCellField(g), {}, false};

    switch (cfg.initial) {
    case InitialKind::zero:
        break;
    case InitialKind::taylor_green: {
        const TaylorGreen tg = taylor_green(0.0, g, mu);
        s.v0 = tg.v;
        if (cfg.initial_pressure) s.p0 = tg.p;
        break;
    }
    case InitialKind::file: {
        CellData d = read_fields_vtk(cfg.initial_file, g);
        s.v0 = std::move(d.velocity);
        if (cfg.initial_pressure) {
            if (!d.pressure) throw std::invalid_argument(cfg.initial_file + ": initial.pressure needs an array p");
            s.p0 = *d.pressure;
        }
        break;
    }
    }

    switch (cfg.forcing) {
    case ForcingKind::zero:
        break;
    case ForcingKind::constant: {
        VelocityField f(g);
        for (double& x : f.u_values()) x = cfg.forcing_value.x;
        for (double& x : f.v_values()) x = cfg.forcing_value.y;
        s.data.forcing = [f](double, const Grid&) { return f; };
        break;
    }
    case ForcingKind::taylor_green:
        s.data.forcing = [mu](double t, const Grid& grid) { return taylor_green(t, grid, mu).forcing; };
        break;
    case ForcingKind::file: {
        const VelocityField f = read_fields_vtk(cfg.forcing_file, g).velocity;
        s.data.forcing = [f](double, const Grid&) { return f; };
        break;
    }
    }

    if (cfg.walls == WallKind::taylor_green)
        s.data.walls = [mu](double t, const Grid& grid) { return taylor_green(t, grid, mu).walls; };
    s.data.obstacle = cfg.obstacle.build(cfg.params.final_time);
    s.exact_taylor_green = cfg.initial == InitialKind::taylor_green && cfg.forcing == ForcingKind::taylor_green &&
                           cfg.walls == WallKind::taylor_green && !cfg.obstacle.present;
    return s;
}

RunSummary run_single(const RunConfig& cfg, const ExperimentOptions& options) {
    cfg.validate();
    ensure_dir(options.out_dir);
    return guarded(options.out_dir, [&] { return execute(cfg, options, 0, cfg.output.csv, "fields_"); });
}

SweepFits fit_sweep(const std::vector<RunSummary>& runs) {
    SweepFits f;
    f.divergence = try_fit(runs, &RunSummary::eps, [](const RunSummary& r) { return std::optional(r.divergence_l2); });
    f.correction =
        try_fit(runs, &RunSummary::dt, [](const RunSummary& r) { return std::optional(r.correction_hminus1_sum); });
    f.velocity_error = try_fit(runs, &RunSummary::dt, [](const RunSummary& r) { return r.velocity_error; });
    f.slip = try_fit(runs, &RunSummary::eta, [](const RunSummary& r) { return std::optional(r.slip_integral); });
    f.penalization =
        try_fit(runs, &RunSummary::eta, [](const RunSummary& r) { return std::optional(r.penalization_integral); });
    return f;
}

SweepResult run_sweep(const RunConfig& cfg, const ExperimentOptions& options) {
    cfg.validate();
    ensure_dir(options.out_dir);
    return guarded(options.out_dir, [&] {
        SweepResult result;
        const std::vector<RunConfig> runs = cfg.expand_sweep();
        for (std::size_t k = 0; k < runs.size(); ++k) {
            const std::string prefix = "run_" + std::to_string(k);
            result.runs.push_back(execute(runs[k], options, static_cast<int>(k), prefix + ".csv", prefix + "_"));
        }
        result.fits = fit_sweep(result.runs);
        TextSink summary(options.out_dir / "summary.csv");
        summary.line(summary_csv_header());
        for (const RunSummary& r : result.runs) summary.line(summary_csv_row(r, result.fits));
        summary.close();
        return result;
    });
}

std::string summary_csv_header() {
    return "run,dt,lambda,eps,eta,mu,steps,initial_divergence,final_kinetic_energy,divergence_l2,"
           "correction_hminus1_sum,slip_integral,penalization_integral,velocity_error,max_ledger,"
           "ledger_non_increasing,prediction_iterations,correction_iterations,"
           "divergence_exponent,divergence_fit_residual,correction_exponent,correction_fit_residual,"
           "velocity_error_exponent,velocity_error_fit_residual,slip_exponent,slip_fit_residual,"
           "penalization_exponent,penalization_fit_residual";
}

std::string summary_csv_row(const RunSummary& r, const SweepFits& f) {
    std::string row = std::to_string(r.index);
    for (double x : {r.dt, r.lambda, r.eps, r.eta, r.mu}) row += "," + number(x);
    row += "," + std::to_string(r.steps);
    for (double x : {r.initial_divergence, r.final_kinetic_energy, r.divergence_l2, r.correction_hminus1_sum,
                     r.slip_integral, r.penalization_integral})
        row += "," + number(x);
    row += "," + (r.velocity_error ? number(*r.velocity_error) : std::string());
    row += "," + number(r.max_ledger);
    row += std::string(",") + (r.ledger_non_increasing ? "1" : "0");
    row += "," + std::to_string(r.prediction_iterations) + "," + std::to_string(r.correction_iterations);
    for (const std::optional<PowerLawFit>* fit :
         {&f.divergence, &f.correction, &f.velocity_error, &f.slip, &f.penalization}) {
        if (*fit) row += "," + number((*fit)->exponent) + "," + number((*fit)->residual);
        else row += ",,";
    }
    return row;
}

}  // namespace vpp
