#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vpp/grid.hpp"
#include "vpp/obstacle.hpp"
#include "vpp/params.hpp"

namespace vpp {

/// Parse or validation failure. `line()` is 0 when the problem is not tied
/// to a line (missing keys, cross-field checks).
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& what, int line = 0) : std::invalid_argument(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

enum class InitialKind { zero, taylor_green, file };
enum class ForcingKind { zero, constant, taylor_green, file };
enum class WallKind { no_slip, taylor_green };

struct ObstacleSpec {
    bool present = false;
    Vec2 center{0.5, 0.5};
    double radius = 0.1;
    Vec2 velocity{};
    double omega = 0.0;
    ChiMode chi = ChiMode::binary;

    Obstacle build(double final_time) const;
};

struct OutputSpec {
    std::string csv = "diagnostics.csv";
    int field_every = 0;     ///< dump fields every k steps; 0 disables
    bool snapshots = false;  ///< keep the velocity series and write translation.csv
};

struct SweepSpec {
    std::string parameter;  ///< dt, lambda, eta or mu
    std::vector<double> values;

    bool active() const { return !parameter.empty(); }
};

struct RunConfig {
    int nx = 0;
    int ny = 0;
    double lx = 1.0;
    double ly = 1.0;
    SchemeParams params;

    InitialKind initial = InitialKind::zero;
    std::string initial_file;
    bool initial_pressure = false;  ///< take p0 from the selected data instead of 0

    ForcingKind forcing = ForcingKind::zero;
    Vec2 forcing_value{};
    std::string forcing_file;

    WallKind walls = WallKind::no_slip;
    ObstacleSpec obstacle;
    OutputSpec output;
    SweepSpec sweep;

    /// "section.key" for every field left at its default.
    std::vector<std::string> defaulted;

    Grid grid() const { return Grid(nx, ny, lx, ly); }
    /// Throws ConfigError naming the offending field.
    void validate() const;
    /// The effective configuration in loadable form; defaulted fields are
    /// marked with a trailing comment.
    std::string echo() const;
    /// One config per sweep value with the swept parameter substituted and
    /// the sweep cleared. A config without a sweep expands to itself.
    std::vector<RunConfig> expand_sweep() const;
};

/// Parses the INI-style text described in docs/config.md.
RunConfig load_config(std::string_view text);
/// Reads and parses a file. Relative data paths are resolved against the
/// file's directory.
RunConfig load_config_file(const std::filesystem::path& path);

}  // namespace vpp
