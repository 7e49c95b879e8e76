#include "vpp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "vpp/io_error.hpp"

namespace vpp {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(std::string_view text, const std::string& key, int line) {
    double x = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(x))
        throw ConfigError("line " + std::to_string(line) + ": " + key + ": expected a number, got '" +
                              std::string(text) + "'",
                          line);
    return x;
}

int parse_int(std::string_view text, const std::string& key, int line) {
    int x = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (ec != std::errc() || end != text.data() + text.size())
        throw ConfigError("line " + std::to_string(line) + ": " + key + ": expected an integer, got '" +
                              std::string(text) + "'",
                          line);
    return x;
}

bool parse_bool(std::string_view text, const std::string& key, int line) {
    if (text == "true" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "no" || text == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": " + key + ": expected true or false", line);
}

template <class E>
E parse_choice(std::string_view text, const std::vector<std::pair<std::string, E>>& choices, const std::string& key,
               int line) {
    for (const auto& [name, value] : choices)
        if (text == name) return value;
    std::string names;
    for (const auto& c : choices) names += (names.empty() ? "" : ", ") + c.first;
    throw ConfigError("line " + std::to_string(line) + ": " + key + ": expected one of " + names + ", got '" +
                          std::string(text) + "'",
                      line);
}

const std::vector<std::pair<std::string, InitialKind>> kInitial = {
    {"zero", InitialKind::zero}, {"taylor_green", InitialKind::taylor_green}, {"file", InitialKind::file}};
const std::vector<std::pair<std::string, ForcingKind>> kForcing = {{"zero", ForcingKind::zero},
                                                                   {"constant", ForcingKind::constant},
                                                                   {"taylor_green", ForcingKind::taylor_green},
                                                                   {"file", ForcingKind::file}};
const std::vector<std::pair<std::string, WallKind>> kWalls = {{"no_slip", WallKind::no_slip},
                                                              {"taylor_green", WallKind::taylor_green}};
const std::vector<std::pair<std::string, ChiMode>> kChi = {{"binary", ChiMode::binary},
                                                           {"fraction", ChiMode::fraction}};
const std::vector<std::pair<std::string, bool>> kShape = {{"none", false}, {"disk", true}};
const std::vector<std::string> kSweepParameters = {"dt", "lambda", "eta", "mu"};

template <class E>
std::string choice_name(E value, const std::vector<std::pair<std::string, E>>& choices) {
    for (const auto& [name, v] : choices)
        if (v == value) return name;
    return "?";
}

using Setter = std::function<void(RunConfig&, std::string_view, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto real = [&t](const std::string& key, double RunConfig::*field) {
            t[key] = [field](RunConfig& c, std::string_view v, const std::string& k, int l) {
                c.*field = parse_double(v, k, l);
            };
        };
        auto param = [&t](const std::string& key, double SchemeParams::*field) {
            t[key] = [field](RunConfig& c, std::string_view v, const std::string& k, int l) {
                c.params.*field = parse_double(v, k, l);
            };
        };
        t["grid.nx"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) { c.nx = parse_int(v, k, l); };
        t["grid.ny"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) { c.ny = parse_int(v, k, l); };
        real("grid.lx", &RunConfig::lx);
        real("grid.ly", &RunConfig::ly);
        param("scheme.dt", &SchemeParams::dt);
        param("scheme.lambda", &SchemeParams::lambda);
        param("scheme.eta", &SchemeParams::eta);
        param("scheme.mu", &SchemeParams::mu);
        param("scheme.final_time", &SchemeParams::final_time);
        t["scheme.track_correction_hminus1"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.params.track_correction_hminus1 = parse_bool(v, k, l);
        };
        t["solver.prediction_rtol"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.params.prediction.rtol = parse_double(v, k, l);
        };
        t["solver.prediction_max_iter"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.params.prediction.max_iter = parse_int(v, k, l);
        };
        t["solver.correction_rtol"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.params.correction.rtol = parse_double(v, k, l);
        };
        t["solver.correction_max_iter"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.params.correction.max_iter = parse_int(v, k, l);
        };
        t["initial.type"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.initial = parse_choice(v, kInitial, k, l);
        };
        t["initial.file"] = [](RunConfig& c, std::string_view v, const std::string&, int) {
            c.initial_file = std::string(v);
        };
        t["initial.pressure"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.initial_pressure = parse_bool(v, k, l);
        };
        t["forcing.type"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.forcing = parse_choice(v, kForcing, k, l);
        };
        t["forcing.x"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.forcing_value.x = parse_double(v, k, l);
        };
        t["forcing.y"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.forcing_value.y = parse_double(v, k, l);
        };
        t["forcing.file"] = [](RunConfig& c, std::string_view v, const std::string&, int) {
            c.forcing_file = std::string(v);
        };
        t["boundary.walls"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.walls = parse_choice(v, kWalls, k, l);
        };
        t["obstacle.shape"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.obstacle.present = parse_choice(v, kShape, k, l);
        };
        auto obstacle_real = [&t](const std::string& key, double& (*get)(ObstacleSpec&)) {
            t[key] = [get](RunConfig& c, std::string_view v, const std::string& k, int l) {
                get(c.obstacle) = parse_double(v, k, l);
            };
        };
        obstacle_real("obstacle.center_x", [](ObstacleSpec& o) -> double& { return o.center.x; });
        obstacle_real("obstacle.center_y", [](ObstacleSpec& o) -> double& { return o.center.y; });
        obstacle_real("obstacle.radius", [](ObstacleSpec& o) -> double& { return o.radius; });
        obstacle_real("obstacle.velocity_x", [](ObstacleSpec& o) -> double& { return o.velocity.x; });
        obstacle_real("obstacle.velocity_y", [](ObstacleSpec& o) -> double& { return o.velocity.y; });
        obstacle_real("obstacle.omega", [](ObstacleSpec& o) -> double& { return o.omega; });
        t["obstacle.chi"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.obstacle.chi = parse_choice(v, kChi, k, l);
        };
        t["output.csv"] = [](RunConfig& c, std::string_view v, const std::string&, int) {
            c.output.csv = std::string(v);
        };
        t["output.field_every"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.output.field_every = parse_int(v, k, l);
        };
        t["output.snapshots"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.output.snapshots = parse_bool(v, k, l);
        };
        t["sweep.parameter"] = [](RunConfig& c, std::string_view v, const std::string&, int l) {
            if (std::find(kSweepParameters.begin(), kSweepParameters.end(), v) == kSweepParameters.end())
                throw ConfigError("line " + std::to_string(l) + ": sweep.parameter: expected dt, lambda, eta or mu",
                                  l);
            c.sweep.parameter = std::string(v);
        };
        t["sweep.values"] = [](RunConfig& c, std::string_view v, const std::string& k, int l) {
            c.sweep.values.clear();
            std::string_view rest = v;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                c.sweep.values.push_back(parse_double(trim(rest.substr(0, comma)), k, l));
                if (comma == std::string_view::npos) break;
                rest = rest.substr(comma + 1);
            }
        };
        return t;
    }();
    return table;
}

const std::vector<std::string> kRequired = {"grid.nx", "grid.ny", "scheme.dt", "scheme.final_time"};

// Keys reported in the echo block when not given.
std::vector<std::string> defaultable(const RunConfig& c) {
    std::vector<std::string> keys = {"grid.lx",
                                     "grid.ly",
                                     "scheme.lambda",
                                     "scheme.eta",
                                     "scheme.mu",
                                     "scheme.track_correction_hminus1",
                                     "solver.prediction_rtol",
                                     "solver.prediction_max_iter",
                                     "solver.correction_rtol",
                                     "solver.correction_max_iter",
                                     "initial.type",
                                     "initial.pressure",
                                     "forcing.type",
                                     "boundary.walls",
                                     "obstacle.shape",
                                     "output.csv",
                                     "output.field_every",
                                     "output.snapshots"};
    if (c.forcing == ForcingKind::constant) {
        keys.push_back("forcing.x");
        keys.push_back("forcing.y");
    }
    if (c.obstacle.present) {
        for (const char* k : {"obstacle.center_x", "obstacle.center_y", "obstacle.radius", "obstacle.velocity_x",
                              "obstacle.velocity_y", "obstacle.omega", "obstacle.chi"})
            keys.push_back(k);
    }
    return keys;
}

bool unit_square(const RunConfig& c) { return std::abs(c.lx - 1.0) <= 1e-14 && std::abs(c.ly - 1.0) <= 1e-14; }

}  // namespace

Obstacle ObstacleSpec::build(double final_time) const {
    if (!present) return Obstacle::none();
    return Obstacle::disk(center, radius, velocity, omega, final_time, chi);
}

void RunConfig::validate() const {
    if (nx < 2) throw ConfigError("grid.nx must be at least 2");
    if (ny < 2) throw ConfigError("grid.ny must be at least 2");
    if (!(lx > 0.0)) throw ConfigError("grid.lx must be positive");
    if (!(ly > 0.0)) throw ConfigError("grid.ly must be positive");
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scheme: ") + e.what());
    }
    if (initial == InitialKind::file && initial_file.empty())
        throw ConfigError("initial.file is required when initial.type = file");
    if (forcing == ForcingKind::file && forcing_file.empty())
        throw ConfigError("forcing.file is required when forcing.type = file");
    if (initial_pressure && initial == InitialKind::zero)
        throw ConfigError("initial.pressure needs initial.type = taylor_green or file");
    const bool uses_tg =
        initial == InitialKind::taylor_green || forcing == ForcingKind::taylor_green || walls == WallKind::taylor_green;
    if (uses_tg && !unit_square(*this)) throw ConfigError("taylor_green data needs grid.lx = grid.ly = 1");
    if (obstacle.present) {
        if (!(obstacle.radius > 0.0)) throw ConfigError("obstacle.radius must be positive");
        if (obstacle.build(params.final_time).clearance(grid()) <= 0.0)
            throw ConfigError("obstacle: the disk must stay inside the domain over [0, final_time]");
    }
    if (output.csv.empty()) throw ConfigError("output.csv must not be empty");
    if (output.field_every < 0) throw ConfigError("output.field_every must be non-negative");
    if (output.snapshots && (nx > 64 || ny > 64)) throw ConfigError("output.snapshots needs a grid of at most 64 x 64");
    if (sweep.active()) {
        if (sweep.values.empty()) throw ConfigError("sweep.values must list at least one value");
        for (double v : sweep.values)
            if (!(v > 0.0)) throw ConfigError("sweep.values must be positive");
        for (const RunConfig& c : expand_sweep()) {
            try {
                c.params.validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("sweep: ") + e.what());
            }
        }
    } else if (!sweep.values.empty()) {
        throw ConfigError("sweep.values given without sweep.parameter");
    }
}

std::vector<RunConfig> RunConfig::expand_sweep() const {
    if (!sweep.active()) return {*this};
    std::vector<RunConfig> out;
    for (double v : sweep.values) {
        RunConfig c = *this;
        c.sweep = {};
        if (sweep.parameter == "dt") c.params.dt = v;
        else if (sweep.parameter == "lambda") c.params.lambda = v;
        else if (sweep.parameter == "eta") c.params.eta = v;
        else if (sweep.parameter == "mu") c.params.mu = v;
        out.push_back(std::move(c));
    }
    return out;
}

std::string RunConfig::echo() const {
    std::ostringstream os;
    auto line = [&](const std::string& section_key, const std::string& value) {
        const std::string key = section_key.substr(section_key.find('.') + 1);
        os << key << " = " << value;
        if (std::find(defaulted.begin(), defaulted.end(), section_key) != defaulted.end()) os << "  # default";
        os << '\n';
    };
    auto flag = [](bool b) { return std::string(b ? "true" : "false"); };

    os << "[grid]\n";
    line("grid.nx", std::to_string(nx));
    line("grid.ny", std::to_string(ny));
    line("grid.lx", number(lx));
    line("grid.ly", number(ly));
    os << "\n[scheme]\n";
    line("scheme.dt", number(params.dt));
    line("scheme.lambda", number(params.lambda));
    os << "# eps = lambda * dt = " << number(params.epsilon()) << '\n';
    line("scheme.eta", number(params.eta));
    line("scheme.mu", number(params.mu));
    line("scheme.final_time", number(params.final_time));
    line("scheme.track_correction_hminus1", flag(params.track_correction_hminus1));
    os << "\n[solver]\n";
    line("solver.prediction_rtol", number(params.prediction.rtol));
    line("solver.prediction_max_iter", std::to_string(params.prediction.max_iter));
    line("solver.correction_rtol", number(params.correction.rtol));
    line("solver.correction_max_iter", std::to_string(params.correction.max_iter));
    os << "\n[initial]\n";
    line("initial.type", choice_name(initial, kInitial));
    if (initial == InitialKind::file) line("initial.file", initial_file);
    line("initial.pressure", flag(initial_pressure));
    os << "\n[forcing]\n";
    line("forcing.type", choice_name(forcing, kForcing));
    if (forcing == ForcingKind::constant) {
        line("forcing.x", number(forcing_value.x));
        line("forcing.y", number(forcing_value.y));
    }
    if (forcing == ForcingKind::file) line("forcing.file", forcing_file);
    os << "\n[boundary]\n";
    line("boundary.walls", choice_name(walls, kWalls));
    os << "\n[obstacle]\n";
    line("obstacle.shape", choice_name(obstacle.present, kShape));
    if (obstacle.present) {
        line("obstacle.center_x", number(obstacle.center.x));
        line("obstacle.center_y", number(obstacle.center.y));
        line("obstacle.radius", number(obstacle.radius));
        line("obstacle.velocity_x", number(obstacle.velocity.x));
        line("obstacle.velocity_y", number(obstacle.velocity.y));
        line("obstacle.omega", number(obstacle.omega));
        line("obstacle.chi", choice_name(obstacle.chi, kChi));
    }
    os << "\n[output]\n";
    line("output.csv", output.csv);
    line("output.field_every", std::to_string(output.field_every));
    line("output.snapshots", flag(output.snapshots));
    if (sweep.active()) {
        os << "\n[sweep]\n";
        line("sweep.parameter", sweep.parameter);
        std::string values;
        for (double v : sweep.values) values += (values.empty() ? "" : ", ") + number(v);
        line("sweep.values", values);
    }
    return os.str();
}

RunConfig load_config(std::string_view text) {
    static const std::set<std::string> sections = {"grid",     "scheme",   "solver", "initial", "forcing",
                                                   "boundary", "obstacle", "output", "sweep"};
    RunConfig cfg;
    std::set<std::string> seen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto hash = raw.find('#');
        const std::string_view s = trim(raw.substr(0, hash));
        if (s.empty()) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";

        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(where + "unterminated section header", line_no);
            section = std::string(trim(s.substr(1, s.size() - 2)));
            if (!sections.contains(section)) throw ConfigError(where + "unknown section [" + section + "]", line_no);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'", line_no);
        const std::string key(trim(s.substr(0, eq)));
        const std::string_view value = trim(s.substr(eq + 1));
        if (key == "eps" || key == "epsilon")
            throw ConfigError(where + key + " cannot be set: it is always lambda * dt; set scheme.lambda instead",
                              line_no);
        if (section.empty()) throw ConfigError(where + "key '" + key + "' outside any section", line_no);
        const std::string full = section + "." + key;
        const auto it = setters().find(full);
        if (it == setters().end()) throw ConfigError(where + "unknown key '" + full + "'", line_no);
        if (!seen.insert(full).second) throw ConfigError(where + "duplicate key '" + full + "'", line_no);
        if (value.empty()) throw ConfigError(where + full + ": missing value", line_no);
        it->second(cfg, value, full, line_no);
    }
    for (const std::string& k : kRequired)
        if (!seen.contains(k)) throw ConfigError("missing required key " + k);
    for (const std::string& k : defaultable(cfg))
        if (!seen.contains(k)) cfg.defaulted.push_back(k);
    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    RunConfig cfg = load_config(text.str());
    const std::filesystem::path base = path.parent_path();
    auto resolve = [&base](std::string& p) {
        if (!p.empty() && std::filesystem::path(p).is_relative()) p = (base / p).string();
    };
    resolve(cfg.initial_file);
    resolve(cfg.forcing_file);
    return cfg;
}

}  // namespace vpp
