#ifndef GHZ_CLI_COMMANDS_H
#define GHZ_CLI_COMMANDS_H

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.h"
#include "cli/output.h"

namespace ghz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitIo = 3;

/// Columns kt, fbar_closed, fbar_numeric, abs_diff; NaN marks a column that
/// was not requested.
Table sweep_table(const RunConfig &config);

/// Long format: curve, kt, fbar_closed, fbar_numeric, abs_diff.
Table figure_table(const RunConfig &config);

/// Curve names of a figure, in output order.
std::vector<std::string> figure_curves(const std::string &figure_id);

struct VerifyResult {
    /// Columns check, case, worst_kt, max_deviation, tolerance, status.
    Table table;
    int checks = 0;
    int failures = 0;
};

VerifyResult verify(const RunConfig &config);

/// Whole program: parse, run, write. Results go to the --output file or to
/// `out`; diagnostics go to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace ghz::cli

#endif
