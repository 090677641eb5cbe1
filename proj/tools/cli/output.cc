#include "cli/output.h"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace ghz::cli {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream &out, const Table &table) {
    for (size_t i = 0; i < table.columns.size(); i++) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); i++) {
            out << (i ? "," : "");
            if (const auto *d = std::get_if<double>(&row[i])) {
                out << format_number(*d);
            } else {
                out << std::get<std::string>(row[i]);
            }
        }
        out << '\n';
    }
}

nlohmann::json table_json(const Table &table) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (size_t i = 0; i < row.size(); i++) {
            if (const auto *d = std::get_if<double>(&row[i])) {
                obj[table.columns[i]] = std::isnan(*d) ? nlohmann::json(nullptr) : nlohmann::json(*d);
            } else {
                obj[table.columns[i]] = std::get<std::string>(row[i]);
            }
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

void emit(const std::string &path, const std::string &text, std::ostream &console) {
    if (path.empty()) {
        console << text;
        console.flush();
        if (!console) {
            throw OutputError("failed writing to the console");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError("cannot open '" + path + "' for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw OutputError("failed writing '" + path + "'");
    }
}

}  // namespace ghz::cli
