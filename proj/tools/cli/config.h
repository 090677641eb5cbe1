#ifndef GHZ_CLI_CONFIG_H
#define GHZ_CLI_CONFIG_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz/closed_form.h"
#include "ghz/lindblad.h"

namespace ghz::cli {

enum class Command { sweep, verify, conjecture, figure };
enum class OutputFormat { csv, json };
enum class SourceMode { automatic, closed, numeric, both };

struct RunConfig {
    Command command = Command::sweep;
    /// Unset means "the command's default" (conjecture reports both sizes).
    std::optional<int> channel_size;
    std::optional<NoiseFamily> family;
    /// Explicit noise, already converted to channel-local qubit indices.
    std::optional<NoiseSpec> noise_spec;
    double kappa = 1.0;
    double kt_max = 1.0;
    int samples = 200;
    std::optional<std::vector<double>> time_grid;
    /// Empty writes to stdout.
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    /// Integrator step bound in units of 1 / kappa.
    double dt_max = 1e-3;
    SourceMode source = SourceMode::automatic;
    std::string figure_id;
    bool mutate = false;

    /// Explicit grid if given, else `samples` uniform points on [0, kt_max].
    std::vector<double> kt_values() const;
    /// Whether the closed-form column can be produced for this config.
    bool has_closed_form() const;
    bool wants_closed() const;
    bool wants_numeric() const;
};

/// Bad flags, values or config files. The message names the field.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// `--help` was given; what() holds the help text.
class HelpRequested : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Parses `args` (without the program name). Values from a `--config` file
/// are applied first and overridden by flags on the command line.
RunConfig parse_config(const std::vector<std::string> &args);

/// Parses `key = value` lines ('#' starts a comment) into `--key=value`
/// arguments. Throws UsageError on malformed lines or unknown keys.
std::vector<std::string> config_file_args(const std::string &path);

/// "2x,3y:0.5" with register indices (channel qubits are 2..n+1); a missing
/// rate means `kappa`.
NoiseSpec parse_noise_spec(const std::string &text, int channel_size, double kappa);

}  // namespace ghz::cli

#endif
