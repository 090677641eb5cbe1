#include "cli/config.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ghz::cli {

namespace {

const std::set<std::string> kFileKeys = {"ghz",    "noise",  "noise-spec", "kappa", "kt-max", "samples", "time-grid",
                                         "output", "format", "dt-max",     "source", "id",    "mutate"};

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_double(const std::string &text, const std::string &field) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used == text.size() && std::isfinite(v)) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw UsageError(field + ": '" + text + "' is not a number");
}

std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> grid;
    for (const auto &item : split(text, ',')) {
        grid.push_back(parse_double(item, "--time-grid"));
    }
    if (grid.empty()) {
        throw UsageError("--time-grid: empty grid");
    }
    for (size_t i = 0; i < grid.size(); i++) {
        if (grid[i] < 0 || (i > 0 && grid[i] < grid[i - 1])) {
            throw UsageError("--time-grid: values must be nonnegative and ascending");
        }
    }
    return grid;
}

// Pulls the value of --config out of the raw arguments, if present.
std::optional<std::string> find_config_path(const std::vector<std::string> &args) {
    for (size_t i = 0; i < args.size(); i++) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw UsageError("--config: missing file name");
            }
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) {
            return args[i].substr(9);
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<double> RunConfig::kt_values() const {
    if (time_grid) {
        return *time_grid;
    }
    std::vector<double> grid;
    for (int i = 0; i < samples; i++) {
        grid.push_back(kt_max * i / (samples - 1));
    }
    return grid;
}

bool RunConfig::has_closed_form() const {
    return family && channel_size && ClosedFormCase::supported(*channel_size, *family);
}

bool RunConfig::wants_closed() const {
    return source == SourceMode::closed || source == SourceMode::both;
}

bool RunConfig::wants_numeric() const {
    return source == SourceMode::numeric || source == SourceMode::both;
}

std::vector<std::string> config_file_args(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("--config: cannot read '" + path + "'");
    }
    std::vector<std::string> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        number++;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config " + path + ":" + std::to_string(number) + ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!kFileKeys.count(key)) {
            throw UsageError("config " + path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
        }
        if (value.empty()) {
            throw UsageError("config " + path + ":" + std::to_string(number) + ": missing value for '" + key + "'");
        }
        out.push_back("--" + key + "=" + value);
    }
    return out;
}

NoiseSpec parse_noise_spec(const std::string &text, int channel_size, double kappa) {
    std::vector<NoiseTerm> terms;
    for (const auto &item : split(text, ',')) {
        std::string head = item;
        double rate = kappa;
        if (size_t colon = item.find(':'); colon != std::string::npos) {
            head = item.substr(0, colon);
            rate = parse_double(item.substr(colon + 1), "--noise-spec");
        }
        if (head.size() < 2) {
            throw UsageError("--noise-spec: malformed term '" + item + "'");
        }
        auto axis = parse_axis(head.back());
        if (!axis) {
            throw UsageError("--noise-spec: unknown axis in '" + item + "' (use x, y or z)");
        }
        int qubit = 0;
        try {
            size_t used = 0;
            qubit = std::stoi(head.substr(0, head.size() - 1), &used);
            if (used != head.size() - 1) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception &) {
            throw UsageError("--noise-spec: bad qubit index in '" + item + "'");
        }
        if (qubit < 2 || qubit > channel_size + 1) {
            throw UsageError("--noise-spec: qubit " + std::to_string(qubit) + " is not a channel qubit (2.." +
                             std::to_string(channel_size + 1) + ")");
        }
        terms.push_back({qubit - 1, *axis, rate});
    }
    try {
        return NoiseSpec(std::move(terms));
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("--noise-spec: ") + e.what());
    }
}

RunConfig parse_config(const std::vector<std::string> &args) {
    std::vector<std::string> all;
    if (auto path = find_config_path(args)) {
        all = config_file_args(*path);
    }
    all.insert(all.end(), args.begin(), args.end());

    CLI::App app{"Teleportation through noisy GHZ channels", "ghz-teleport"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string command, noise, noise_spec, time_grid, format = "csv", source = "auto";
    RunConfig cfg;
    int ghz = 0;
    app.add_option("command", command, "sweep, verify, conjecture or figure")->required();
    app.add_option("--ghz", ghz, "channel size n (2..6)");
    app.add_option("--noise", noise, "pauli-x, pauli-y, pauli-z, isotropic or mixed");
    app.add_option("--noise-spec", noise_spec, "explicit terms, e.g. 2x,3y:0.5 (qubits 2..n+1)");
    app.add_option("--kappa", cfg.kappa, "decoherence rate");
    app.add_option("--kt-max", cfg.kt_max, "largest kappa*t of the uniform grid");
    app.add_option("--samples", cfg.samples, "points of the uniform grid");
    app.add_option("--time-grid", time_grid, "explicit comma-separated kappa*t grid");
    app.add_option("--output", cfg.output_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or json");
    app.add_option("--dt-max", cfg.dt_max, "integrator step bound in units of 1/kappa");
    app.add_option("--source", source, "closed, numeric, both or auto");
    app.add_option("--id", cfg.figure_id, "fig3, fig6 or fig7");
    std::string config_path;
    app.add_option("--config", config_path, "key = value file; command-line flags take precedence");
    app.add_flag("--mutate", cfg.mutate, "verify: flip the sign of one term in each closed form");

    std::vector<std::string> reversed(all.rbegin(), all.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }

    if (command == "sweep") {
        cfg.command = Command::sweep;
    } else if (command == "verify") {
        cfg.command = Command::verify;
    } else if (command == "conjecture") {
        cfg.command = Command::conjecture;
    } else if (command == "figure") {
        cfg.command = Command::figure;
    } else {
        throw UsageError("command: unknown command '" + command + "' (sweep, verify, conjecture, figure)");
    }

    if (app.count("--ghz")) {
        if (ghz < 2 || ghz > 6) {
            throw UsageError("--ghz: channel size must be 2..6, got " + std::to_string(ghz));
        }
        cfg.channel_size = ghz;
    }
    if (!(cfg.kappa > 0) || !std::isfinite(cfg.kappa)) {
        throw UsageError("--kappa: must be positive");
    }
    if (!(cfg.kt_max > 0) || !std::isfinite(cfg.kt_max)) {
        throw UsageError("--kt-max: must be positive");
    }
    if (cfg.samples < 2) {
        throw UsageError("--samples: must be at least 2");
    }
    if (!(cfg.dt_max > 0) || !std::isfinite(cfg.dt_max)) {
        throw UsageError("--dt-max: must be positive");
    }
    if (app.count("--time-grid")) {
        cfg.time_grid = parse_grid(time_grid);
    }

    if (format == "csv") {
        cfg.format = OutputFormat::csv;
    } else if (format == "json") {
        cfg.format = OutputFormat::json;
    } else {
        throw UsageError("--format: expected csv or json, got '" + format + "'");
    }

    if (source == "auto") {
        cfg.source = SourceMode::automatic;
    } else if (source == "closed") {
        cfg.source = SourceMode::closed;
    } else if (source == "numeric") {
        cfg.source = SourceMode::numeric;
    } else if (source == "both") {
        cfg.source = SourceMode::both;
    } else {
        throw UsageError("--source: expected closed, numeric, both or auto, got '" + source + "'");
    }

    if (app.count("--noise") && app.count("--noise-spec")) {
        throw UsageError("--noise-spec: cannot be combined with --noise");
    }
    if (app.count("--noise")) {
        cfg.family = parse_family(noise);
        if (!cfg.family) {
            throw UsageError("--noise: unknown family '" + noise + "' (pauli-x, pauli-y, pauli-z, isotropic, mixed)");
        }
    }
    if (app.count("--noise-spec")) {
        if (!cfg.channel_size) {
            throw UsageError("--noise-spec: requires --ghz");
        }
        cfg.noise_spec = parse_noise_spec(noise_spec, *cfg.channel_size, cfg.kappa);
    }
    if (cfg.mutate && cfg.command != Command::verify) {
        throw UsageError("--mutate: only valid with verify");
    }

    switch (cfg.command) {
        case Command::sweep:
            if (!cfg.channel_size) {
                throw UsageError("--ghz: sweep needs a channel size");
            }
            if (!cfg.family && !cfg.noise_spec) {
                throw UsageError("--noise: sweep needs --noise or --noise-spec");
            }
            if (cfg.source == SourceMode::automatic) {
                cfg.source = cfg.has_closed_form() ? SourceMode::both : SourceMode::numeric;
            }
            if (cfg.wants_closed() && !cfg.has_closed_form()) {
                std::string what = cfg.family ? std::to_string(*cfg.channel_size) + "GHZ " + family_name(*cfg.family)
                                              : std::string("an explicit --noise-spec");
                throw UsageError("--source: no closed form for " + what + "; supported: " +
                                 ClosedFormCase::supported_list());
            }
            break;
        case Command::figure:
            if (cfg.figure_id != "fig3" && cfg.figure_id != "fig6" && cfg.figure_id != "fig7") {
                throw UsageError("--id: figure must be fig3, fig6 or fig7");
            }
            if (cfg.source == SourceMode::automatic) {
                cfg.source = SourceMode::both;
            }
            break;
        case Command::conjecture:
            if (cfg.channel_size && *cfg.channel_size != 3 && *cfg.channel_size != 4) {
                throw UsageError("--ghz: conjecture report needs 3 or 4");
            }
            break;
        case Command::verify:
            break;
    }
    return cfg;
}

}  // namespace ghz::cli
