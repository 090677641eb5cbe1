#ifndef GHZ_CLI_OUTPUT_H
#define GHZ_CLI_OUTPUT_H

#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ghz::cli {

/// A table cell: a number (NaN means "not computed") or text.
using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// 12 significant digits; NaN prints as "nan".
std::string format_number(double v);

/// Header row plus one line per row, LF endings.
void write_csv(std::ostream &out, const Table &table);

/// Array of objects keyed by column; NaN becomes null.
nlohmann::json table_json(const Table &table);

class OutputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Writes `text` to `path`, or to `console` when path is empty. Throws
/// OutputError on failure.
void emit(const std::string &path, const std::string &text, std::ostream &console);

}  // namespace ghz::cli

#endif
