#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "vpp/acceptance.hpp"
#include "vpp/config.hpp"
#include "vpp/experiment.hpp"
#include "vpp/io_error.hpp"
#include "vpp/linalg.hpp"

namespace {

enum ExitCode { ok = 0, validation = 1, solver = 2, io = 3 };

int report(const char* kind, const std::exception& e, int code) {
    std::fprintf(stderr, "vppsolve: %s: %s\n", kind, e.what());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vector penalty-projection Navier-Stokes solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    bool quiet = false;
    app.add_option("--config", config_path, "Run configuration file");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_flag("--quiet", quiet, "Only print errors");

    auto* run_cmd = app.add_subcommand("run", "Single run: per-step diagnostics CSV and optional field dumps");
    auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep with summary.csv and fitted exponents");
    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria A1-A8");
    auto* print_cmd = app.add_subcommand("print-config", "Print the effective configuration with defaults");
    std::vector<std::string> criteria;
    verify_cmd->add_option("criteria", criteria, "Subset of criteria, e.g. A1 A3");
    for (CLI::App* sub : {run_cmd, sweep_cmd, verify_cmd, print_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : validation;
    }

    try {
        if (*verify_cmd) {
            bool all = true;
            std::vector<std::string> lines;
            for (const vpp::CriterionResult& r : vpp::run_acceptance(criteria)) {
                if (!quiet || !r.pass) std::printf("%s\n", r.line().c_str());
                std::fflush(stdout);
                lines.push_back(r.line());
                all = all && r.pass;
            }
            if (app.get_option("--out")->count() > 0) {
                std::filesystem::create_directories(out_dir);
                std::ofstream f(std::filesystem::path(out_dir) / "acceptance.txt");
                for (const std::string& l : lines) f << l << '\n';
                if (!f) throw vpp::IoError("cannot write " + out_dir + "/acceptance.txt");
            }
            return all ? ok : validation;
        }

        if (config_path.empty()) throw vpp::ConfigError("--config is required for this command");
        const vpp::RunConfig cfg = vpp::load_config_file(config_path);

        if (*print_cmd) {
            std::cout << cfg.echo();
            return ok;
        }
        if (!quiet) std::cout << cfg.echo() << '\n';
        vpp::ExperimentOptions options;
        options.out_dir = out_dir;
        options.log = quiet ? nullptr : &std::cout;

        if (*run_cmd) {
            if (cfg.sweep.active()) throw vpp::ConfigError("the config defines a sweep; use the sweep command");
            vpp::run_single(cfg, options);
        } else {
            if (!cfg.sweep.active()) throw vpp::ConfigError("sweep needs a [sweep] section");
            const vpp::SweepResult r = vpp::run_sweep(cfg, options);
            if (!quiet && r.fits.divergence)
                std::printf("divergence exponent vs eps: %.4f (residual %.2e)\n", r.fits.divergence->exponent,
                            r.fits.divergence->residual);
        }
        return ok;
    } catch (const vpp::IoError& e) {
        return report("I/O error", e, io);
    } catch (const vpp::NonConvergence& e) {
        return report("solver failure", e, solver);
    } catch (const std::filesystem::filesystem_error& e) {
        return report("I/O error", e, io);
    } catch (const std::invalid_argument& e) {
        return report("invalid input", e, validation);
    } catch (const std::out_of_range& e) {
        return report("invalid input", e, validation);
    } catch (const std::exception& e) {
        return report("error", e, solver);
    }
}
