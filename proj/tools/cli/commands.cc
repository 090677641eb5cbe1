#include "cli/commands.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ghz/conjecture.h"
#include "ghz/parallel.h"
#include "ghz/teleport.h"

namespace ghz::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const std::vector<double> kVerifyGrid = {0.05, 0.1, 0.3, 0.5, 1.0};

struct CurveSpec {
    int n;
    NoiseFamily family;
};

std::string curve_name(const CurveSpec &c) {
    return std::to_string(c.n) + "GHZ " + family_name(c.family);
}

std::vector<CurveSpec> figure_specs(const std::string &id) {
    if (id == "fig3") {
        std::vector<CurveSpec> out;
        for (auto f : {NoiseFamily::pauli_x, NoiseFamily::pauli_y, NoiseFamily::pauli_z, NoiseFamily::isotropic}) {
            out.push_back({3, f});
            out.push_back({4, f});
        }
        return out;
    }
    int n = id == "fig6" ? 3 : 4;
    std::vector<CurveSpec> out;
    for (auto f : kAllFamilies) {
        out.push_back({n, f});
    }
    return out;
}

// Closed-form and pipeline columns for one curve; NaN where not requested.
std::vector<std::vector<Cell>> curve_rows(int n, const std::optional<NoiseFamily> &family,
                                          const std::optional<NoiseSpec> &spec, const RunConfig &config) {
    std::vector<double> grid = config.kt_values();
    std::vector<double> closed(grid.size(), kNaN), numeric(grid.size(), kNaN);

    if (config.wants_closed()) {
        AverageFidelityFormula formula(ClosedFormCase::make(n, *family, config.kappa));
        for (size_t i = 0; i < grid.size(); i++) {
            closed[i] = formula.evaluate(grid[i]);
        }
    }
    if (config.wants_numeric()) {
        TeleportScenario scenario{n, spec ? *spec : family_noise(*family, n, config.kappa), grid,
                                  Evolution::integrated, config.dt_max};
        FidelityCurve curve = fidelity_curve(scenario);
        for (size_t i = 0; i < grid.size(); i++) {
            numeric[i] = curve.points[i].fbar;
        }
    }
    std::vector<std::vector<Cell>> rows;
    for (size_t i = 0; i < grid.size(); i++) {
        double diff = std::abs(closed[i] - numeric[i]);
        rows.push_back({grid[i], closed[i], numeric[i], diff});
    }
    return rows;
}

struct CheckRow {
    std::string check;
    std::string name;
    double worst_kt = 0;
    double deviation = 0;
    double tolerance;

    void record(double kt, double dev) {
        if (!(dev <= deviation)) {
            deviation = dev;
            worst_kt = kt;
        }
    }
    bool passed() const { return deviation <= tolerance; }
};

std::vector<CheckRow> verify_case(const ClosedFormCase &c, const RunConfig &config) {
    AverageFidelityFormula formula(c);
    if (config.mutate) {
        formula = formula.mutated();
    }
    double kappa = c.kappa();
    std::vector<double> times;
    for (double kt : kVerifyGrid) {
        times.push_back(kt / kappa);
    }
    DensityMatrix rho0 = DensityMatrix::pure(ghz_state(c.channel_size()));
    std::vector<DensityMatrix> numeric = evolve_numeric_grid(rho0, c.noise(), times, config.dt_max / kappa);

    CheckRow rho{"rho_numeric_vs_closed", c.name(), 0, 0, 1e-8};
    CheckRow ode{"reduced_ode_vs_closed", c.name(), 0, 0, 1e-9};
    CheckRow pointwise{"fidelity_pointwise", c.name(), 0, 0, 1e-9};
    CheckRow fbar_closed{"fbar_quadrature_closed_states", c.name(), 0, 0, 1e-9};
    CheckRow fbar_numeric{"fbar_quadrature_numeric_states", c.name(), 0, 0, 1e-7};

    for (size_t i = 0; i < kVerifyGrid.size(); i++) {
        double kt = kVerifyGrid[i];
        DensityMatrix exact = evolve_closed_form(c, times[i]);
        rho.record(kt, max_abs_diff(exact.matrix(), numeric[i].matrix()));

        auto closed_coeffs = ansatz_ode_coefficients(c, times[i]);
        auto integrated = integrate_reduced_system(c, times[i], 2000);
        for (const auto &[symbol, value] : closed_coeffs) {
            ode.record(kt, std::abs(value - integrated.at(symbol)));
        }

        TeleportMap map(exact);
        for (int a = 0; a < 5; a++) {
            for (int b = 0; b < 5; b++) {
                BlochAngles angles(std::numbers::pi * a / 4, 2 * std::numbers::pi * b / 5);
                pointwise.record(kt, std::abs(map.fidelity(angles) - formula.fidelity(kt, angles)));
            }
        }
        double expected = formula.evaluate(kt);
        fbar_closed.record(kt, std::abs(average_fidelity(exact).value - expected));
        fbar_numeric.record(kt, std::abs(average_fidelity(numeric[i]).value - expected));
    }
    return {rho, ode, pointwise, fbar_closed, fbar_numeric};
}

std::vector<CheckRow> verify_universality(const RunConfig &config) {
    AverageFidelityFormula reference(ClosedFormCase::make(4, NoiseFamily::pauli_x, config.kappa));
    if (config.mutate) {
        reference = reference.mutated();
    }
    std::vector<CheckRow> rows;
    for (int n = 2; n <= 6; n++) {
        TeleportScenario scenario{n, family_noise(NoiseFamily::pauli_x, n, config.kappa), kVerifyGrid,
                                  Evolution::integrated, config.dt_max};
        CheckRow row{"x_noise_universality", std::to_string(n) + "GHZ pauli-x", 0, 0, 1e-9};
        for (const auto &p : fidelity_curve(scenario).points) {
            row.record(p.kt, std::abs(p.fbar - reference.evaluate(p.kt)));
        }
        rows.push_back(row);
    }
    return rows;
}

std::string render(const Table &table, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::csv) {
        write_csv(out, table);
    } else {
        out << table_json(table).dump(2) << '\n';
    }
    return out.str();
}

std::string family_list(const std::vector<NoiseFamily> &families) {
    std::string out;
    for (size_t i = 0; i < families.size(); i++) {
        out += (i ? ";" : "") + family_name(families[i]);
    }
    return out;
}

std::string run_conjecture(const RunConfig &config, std::ostream &err) {
    std::vector<int> sizes = config.channel_size ? std::vector<int>{*config.channel_size} : std::vector<int>{3, 4};
    std::vector<double> grid = config.time_grid ? *config.time_grid : conjecture_grid();

    Table table;
    table.columns = {"ghz", "kt"};
    for (auto f : kAllFamilies) {
        table.columns.push_back(family_name(f));
    }
    table.columns.push_back("mixed_beats");
    nlohmann::json reports = nlohmann::json::array();

    for (int n : sizes) {
        ConjectureReport report = conjecture_report(n, grid);
        Table own{table.columns, {}};
        for (const auto &row : report.rows) {
            std::vector<Cell> cells{static_cast<double>(n), row.kt};
            for (auto f : kAllFamilies) {
                cells.push_back(row.fbar.at(f));
            }
            cells.push_back(family_list(row.mixed_beats));
            own.rows.push_back(cells);
            table.rows.push_back(cells);
        }
        std::string name = std::to_string(n) + "GHZ";
        if (report.crossover_vs_z) {
            err << name << ": mixed vs pauli-z crossover at kt = " << format_number(*report.crossover_vs_z) << '\n';
        } else {
            err << name << ": mixed vs pauli-z does not cross on the grid\n";
        }
        err << name << ": max |3GHZ - 4GHZ| isotropic gap " << format_number(report.max_isotropic_gap)
            << " at kt = " << format_number(report.max_isotropic_gap_kt) << '\n';

        nlohmann::json entry;
        entry["ghz"] = n;
        entry["crossover_vs_pauli_z"] =
            report.crossover_vs_z ? nlohmann::json(*report.crossover_vs_z) : nlohmann::json(nullptr);
        entry["max_isotropic_gap"] = report.max_isotropic_gap;
        entry["max_isotropic_gap_kt"] = report.max_isotropic_gap_kt;
        entry["rows"] = table_json(own);
        reports.push_back(std::move(entry));
    }
    if (config.format == OutputFormat::json) {
        return reports.dump(2) + "\n";
    }
    return render(table, OutputFormat::csv);
}

}  // namespace

Table sweep_table(const RunConfig &config) {
    Table table{{"kt", "fbar_closed", "fbar_numeric", "abs_diff"}, {}};
    table.rows = curve_rows(*config.channel_size, config.family, config.noise_spec, config);
    return table;
}

std::vector<std::string> figure_curves(const std::string &figure_id) {
    std::vector<std::string> out;
    for (const auto &spec : figure_specs(figure_id)) {
        out.push_back(curve_name(spec));
    }
    return out;
}

Table figure_table(const RunConfig &config) {
    Table table{{"curve", "kt", "fbar_closed", "fbar_numeric", "abs_diff"}, {}};
    for (const auto &spec : figure_specs(config.figure_id)) {
        for (auto &row : curve_rows(spec.n, spec.family, std::nullopt, config)) {
            row.insert(row.begin(), curve_name(spec));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

VerifyResult verify(const RunConfig &config) {
    std::vector<ClosedFormCase> cases = ClosedFormCase::all(config.kappa);
    auto per_case = parallel_map<std::vector<CheckRow>>(cases.size() + 1, [&](size_t i) {
        return i < cases.size() ? verify_case(cases[i], config) : verify_universality(config);
    });

    VerifyResult result;
    result.table.columns = {"check", "case", "worst_kt", "max_deviation", "tolerance", "status"};
    for (const auto &rows : per_case) {
        for (const auto &r : rows) {
            result.checks++;
            result.failures += r.passed() ? 0 : 1;
            result.table.rows.push_back(
                {r.check, r.name, r.worst_kt, r.deviation, r.tolerance, std::string(r.passed() ? "pass" : "FAIL")});
        }
    }
    return result;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig config;
    try {
        config = parse_config(args);
    } catch (const HelpRequested &help) {
        out << help.what();
        return kExitOk;
    } catch (const UsageError &e) {
        err << "ghz-teleport: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        switch (config.command) {
            case Command::sweep:
                emit(config.output_path, render(sweep_table(config), config.format), out);
                return kExitOk;
            case Command::figure:
                emit(config.output_path, render(figure_table(config), config.format), out);
                return kExitOk;
            case Command::conjecture:
                emit(config.output_path, run_conjecture(config, err), out);
                return kExitOk;
            case Command::verify: {
                VerifyResult result = verify(config);
                emit(config.output_path, render(result.table, config.format), out);
                err << "verify: " << result.checks << " checks, " << result.failures << " failed\n";
                for (const auto &row : result.table.rows) {
                    if (std::get<std::string>(row.back()) != "pass") {
                        err << "  " << std::get<std::string>(row[0]) << " " << std::get<std::string>(row[1])
                            << ": deviation " << format_number(std::get<double>(row[3])) << " at kt "
                            << format_number(std::get<double>(row[2])) << '\n';
                    }
                }
                return result.failures == 0 ? kExitOk : kExitVerifyFailed;
            }
        }
    } catch (const OutputError &e) {
        err << "ghz-teleport: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        err << "ghz-teleport: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace ghz::cli
