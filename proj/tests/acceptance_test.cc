// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "cli/commands.h"
#include "ghz/conjecture.h"
#include "ghz/parallel.h"
#include "ghz/teleport.h"
#include "reference_formulas.h"
#include "test_support.h"

using namespace ghz;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

const std::vector<double> kCheckTimes = {0.05, 0.1, 0.3, 0.5, 1.0};

std::string fmt(const char *f, double a, double b = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Outcome perfect_teleportation() {
    std::mt19937 rng(101);
    double worst = 0;
    for (int n = 2; n <= 6; n++) {
        TeleportMap map(DensityMatrix::pure(ghz_state(n)));
        for (int i = 0; i < 50; i++) {
            BlochAngles a = ghz::testing::random_angles(rng);
            worst = std::max(worst, std::abs(map.fidelity(a) - 1));
            if (n == 3 && i < 5) {
                worst = std::max(worst, std::abs(fidelity(teleport_output(DensityMatrix::pure(ghz_state(n)), a), a) - 1));
            }
        }
    }
    return {worst <= 1e-10, fmt("max |F - 1| = %.3g (tol 1e-10)", worst)};
}

Outcome closed_vs_numeric_states() {
    auto cases = ClosedFormCase::all(1.0);
    auto worst = parallel_map<double>(cases.size(), [&](size_t i) {
        const auto &c = cases[i];
        DensityMatrix rho0 = DensityMatrix::pure(ghz_state(c.channel_size()));
        auto states = evolve_numeric_grid(rho0, c.noise(), kCheckTimes, 1e-3 / c.kappa());
        double d = 0;
        for (size_t k = 0; k < kCheckTimes.size(); k++) {
            d = std::max(d, max_abs_diff(states[k].matrix(), evolve_closed_form(c, kCheckTimes[k]).matrix()));
        }
        return d;
    });
    double m = *std::max_element(worst.begin(), worst.end());
    return {m <= 1e-8, fmt("%g cases, max entry difference %.3g (tol 1e-8)", double(cases.size()), m)};
}

Outcome average_fidelity_formulas() {
    auto refs = ghz::testing::reference_formulas();
    auto worst = parallel_map<double>(refs.size(), [&](size_t i) {
        const auto &p = refs[i];
        auto c = ClosedFormCase::make(p.n, p.family, 1.0);
        DensityMatrix rho0 = DensityMatrix::pure(ghz_state(p.n));
        auto numeric = evolve_numeric_grid(rho0, c.noise(), kCheckTimes, 1e-3);
        double d = 0;
        for (size_t k = 0; k < kCheckTimes.size(); k++) {
            double kt = kCheckTimes[k];
            d = std::max(d, std::abs(average_fidelity(numeric[k]).value - p.fbar(kt)));
            d = std::max(d, std::abs(average_fidelity(evolve_closed_form(c, kt)).value - p.fbar(kt)));
            d = std::max(d, std::abs(average_fidelity_closed(c, kt) - p.fbar(kt)));
        }
        return d;
    });
    double m = *std::max_element(worst.begin(), worst.end());
    return {m <= 1e-9, fmt("max |Fbar_quadrature - Fbar_formula| = %.3g (tol 1e-9)", m)};
}

Outcome x_noise_universality() {
    std::vector<int> sizes = {2, 3, 4, 5, 6};
    auto curves = parallel_map<std::vector<double>>(sizes.size(), [&](size_t i) {
        int n = sizes[i];
        TeleportScenario s{n, family_noise(NoiseFamily::pauli_x, n, 1.0), kCheckTimes};
        std::vector<double> out;
        for (const auto &p : fidelity_curve(s).points) {
            out.push_back(p.fbar);
        }
        return out;
    });
    double d = 0;
    for (size_t i = 1; i < curves.size(); i++) {
        for (size_t k = 0; k < kCheckTimes.size(); k++) {
            d = std::max(d, std::abs(curves[i][k] - curves[0][k]));
        }
    }
    return {d <= 1e-9, fmt("max spread across EPR..6GHZ = %.3g (tol 1e-9)", d)};
}

Outcome robustness_ordering() {
    double min_gap = 1e9;
    bool ok = true;
    for (auto fam : {NoiseFamily::pauli_y, NoiseFamily::pauli_z, NoiseFamily::isotropic}) {
        AverageFidelityFormula f3(ClosedFormCase::make(3, fam, 1.0));
        AverageFidelityFormula f4(ClosedFormCase::make(4, fam, 1.0));
        for (int i = 1; i <= 100; i++) {
            double kt = i / 100.0;
            double gap = f3.evaluate(kt) - f4.evaluate(kt);
            ok = ok && gap >= 0 && (kt < 0.05 || gap > 0);
            if (kt >= 0.05) {
                min_gap = std::min(min_gap, gap);
            }
        }
    }
    return {ok, fmt("min Fbar(3GHZ) - Fbar(4GHZ) for kt >= 0.05: %.3g", min_gap)};
}

Outcome conjecture_falsification() {
    ConjectureReport r3 = conjecture_report(3);
    bool three = true;
    for (const auto &row : r3.rows) {
        three = three && row.fbar.at(NoiseFamily::mixed) > row.fbar.at(NoiseFamily::pauli_y);
    }
    ConjectureReport r4 = conjecture_report(4);
    if (!r4.crossover_vs_z) {
        return {false, "no 4GHZ mixed vs pauli-z crossover"};
    }
    double root = *r4.crossover_vs_z;
    bool four = root > 0.15 && root < 0.3;
    for (const auto &row : r4.rows) {
        double d = row.fbar.at(NoiseFamily::mixed) - row.fbar.at(NoiseFamily::pauli_z);
        four = four && (row.kt < root ? d > 0 : d < 0);
    }
    return {three && four, fmt("3GHZ mixed > pauli-y on (0,1]; 4GHZ mixed vs pauli-z root at kt = %.10f", root)};
}

ComplexMatrix expected_derivative(NoiseFamily fam, double kappa) {
    ComplexMatrix m(16, 16);
    auto set = [&](int i, double diag, double anti) {
        m(i, i) = diag * kappa;
        m(i, 15 - i) = anti * kappa;
    };
    const std::vector<int> odd_rows = {1, 2, 4, 8, 7, 11, 13, 14};
    switch (fam) {
        case NoiseFamily::pauli_x:
            set(0, -2, -2), set(15, -2, -2);
            for (int i : odd_rows) set(i, 0.5, 0.5);
            break;
        case NoiseFamily::pauli_y:
            set(0, -2, -2), set(15, -2, -2);
            for (int i : odd_rows) set(i, 0.5, -0.5);
            break;
        case NoiseFamily::pauli_z:
            set(0, 0, -4), set(15, 0, -4);
            break;
        case NoiseFamily::isotropic:
            set(0, -4, -8), set(15, -4, -8);
            for (int i : odd_rows) set(i, 1, 0);
            break;
        default:
            break;
    }
    return m;
}

Outcome infinitesimal_step() {
    const double kappa = 0.7;
    const double delta = 1e-6 / kappa;
    double worst_rel = 0, worst_zero = 0;
    bool pattern = true;
    DensityMatrix rho0 = DensityMatrix::pure(ghz_state(4));
    for (auto fam : {NoiseFamily::pauli_x, NoiseFamily::pauli_y, NoiseFamily::pauli_z, NoiseFamily::isotropic}) {
        DensityMatrix step = evolve_numeric(rho0, family_noise(fam, 4, kappa), delta, delta);
        ComplexMatrix expected = expected_derivative(fam, kappa);
        for (size_t i = 0; i < 16; i++) {
            for (size_t j = 0; j < 16; j++) {
                Complex slope = (step(i, j) - rho0(i, j)) / delta;
                Complex e = expected(i, j);
                if (e == Complex(0)) {
                    worst_zero = std::max(worst_zero, std::abs(slope) / kappa);
                } else {
                    double rel = std::abs(slope - e) / std::abs(e);
                    worst_rel = std::max(worst_rel, rel);
                    pattern = pattern && std::abs(slope) > 0;
                }
            }
        }
    }
    bool ok = pattern && worst_rel <= 1e-4 && worst_zero <= 1e-4;
    return {ok, fmt("max relative error %.3g, max |slope|/kappa on zero entries %.3g (tol 1e-4)", worst_rel,
                    worst_zero)};
}

Outcome measurement_branches() {
    std::mt19937 rng(202);
    auto cases = ClosedFormCase::all(1.0);
    std::uniform_int_distribution<size_t> pick(0, cases.size() - 1);
    std::uniform_real_distribution<double> time(0.01, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 20; trial++) {
        const auto &c = cases[pick(rng)];
        DensityMatrix channel = evolve_closed_form(c, time(rng));
        BlochAngles a = ghz::testing::random_angles(rng);
        int n = c.channel_size();
        ComplexMatrix mix(2, 2);
        for (int idx = 0; idx < (1 << n); idx++) {
            std::vector<int> outcome;
            for (int q = n - 1; q >= 0; q--) {
                outcome.push_back((idx >> q) & 1);
            }
            MeasuredBranch b = teleport_measured(channel, a, outcome);
            if (b.state) {
                ComplexMatrix part = b.state->matrix();
                part *= b.probability;
                mix += part;
            }
        }
        worst = std::max(worst, max_abs_diff(mix, teleport_output(channel, a).matrix()));
    }
    return {worst <= 1e-10, fmt("max |mixture - output| = %.3g over 20 draws (tol 1e-10)", worst)};
}

Outcome invariants() {
    auto cases = ClosedFormCase::all(1.0);
    std::vector<double> times = {0.0, 0.02, 0.1, 0.5, 1.0, 2.0};
    auto worst = parallel_map<std::array<double, 3>>(cases.size(), [&](size_t i) {
        const auto &c = cases[i];
        DensityMatrix rho0 = DensityMatrix::pure(ghz_state(c.channel_size()));
        auto numeric = evolve_numeric_grid(rho0, c.noise(), times, 1e-3);
        std::array<double, 3> w{0, 0, 0};
        for (size_t k = 0; k < times.size(); k++) {
            for (const DensityMatrix &rho : {numeric[k], evolve_closed_form(c, times[k])}) {
                w[0] = std::max(w[0], std::abs(trace(rho.matrix()) - 1.0));
                w[1] = std::max(w[1], max_abs_diff(rho.matrix(), dagger(rho.matrix())));
                w[2] = std::max(w[2], -rho.min_eigenvalue());
            }
        }
        return w;
    });
    std::array<double, 3> w{0, 0, 0};
    for (const auto &x : worst) {
        for (int k = 0; k < 3; k++) w[k] = std::max(w[k], x[k]);
    }
    bool monotone = true;
    double start = 0;
    for (const auto &c : cases) {
        AverageFidelityFormula f(c);
        start = std::max(start, std::abs(f.evaluate(0) - 1));
        double prev = f.evaluate(0);
        for (int i = 1; i < 1000; i++) {
            double v = f.evaluate(i / 999.0);
            monotone = monotone && v <= prev + 1e-15;
            prev = v;
        }
    }
    bool ok = w[0] <= 1e-10 && w[1] <= 1e-12 && w[2] <= 1e-10 && start <= 1e-14 && monotone;
    std::ostringstream d;
    d << "trace " << w[0] << ", hermiticity " << w[1] << ", min eigenvalue " << -w[2] << ", |Fbar(0)-1| " << start
      << ", monotone " << (monotone ? "yes" : "no");
    return {ok, d.str()};
}

// curve name -> kt -> closed-form Fbar, read back from the CLI's CSV output.
std::map<std::string, std::map<double, double>> run_figure(const std::string &id, bool &numeric_ok) {
    std::ostringstream out, err;
    int code = cli::run_cli({"figure", "--id", id, "--time-grid", "0.1,0.5,1.0"}, out, err);
    if (code != cli::kExitOk) {
        throw std::runtime_error("figure " + id + " failed: " + err.str());
    }
    std::map<std::string, std::map<double, double>> curves;
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string name, kt, closed, numeric, diff;
        std::getline(ls, name, ',');
        std::getline(ls, kt, ',');
        std::getline(ls, closed, ',');
        std::getline(ls, numeric, ',');
        std::getline(ls, diff, ',');
        curves[name][std::stod(kt)] = std::stod(closed);
        numeric_ok = numeric_ok && std::stod(diff) <= 1e-7;
    }
    return curves;
}

Outcome figure_reproduction() {
    bool ok = true;
    bool numeric_ok = true;
    std::vector<std::string> problems;
    auto descending = [&](const std::map<std::string, std::map<double, double>> &curves, int n,
                          const std::vector<std::string> &order, double kt) {
        for (size_t i = 1; i < order.size(); i++) {
            std::string hi = std::to_string(n) + "GHZ " + order[i - 1];
            std::string lo = std::to_string(n) + "GHZ " + order[i];
            if (!(curves.at(hi).at(kt) > curves.at(lo).at(kt))) {
                ok = false;
                problems.push_back(hi + " <= " + lo + fmt(" at kt=%.1f", kt));
            }
        }
    };
    const std::vector<std::string> early = {"pauli-x", "mixed", "pauli-z", "pauli-y", "isotropic"};
    const std::vector<std::string> late = {"pauli-x", "pauli-z", "mixed", "pauli-y", "isotropic"};
    for (auto [id, n] : {std::pair{"fig6", 3}, std::pair{"fig7", 4}}) {
        auto curves = run_figure(id, numeric_ok);
        descending(curves, n, early, 0.1);
        descending(curves, n, late, 0.5);
        descending(curves, n, late, 1.0);
    }
    auto fig3 = run_figure("fig3", numeric_ok);
    for (double kt : {0.1, 0.5, 1.0}) {
        for (std::string fam : {"pauli-y", "pauli-z", "isotropic"}) {
            if (!(fig3.at("3GHZ " + fam).at(kt) > fig3.at("4GHZ " + fam).at(kt))) {
                ok = false;
                problems.push_back("fig3 " + fam + fmt(" at kt=%.1f", kt));
            }
        }
        if (std::abs(fig3.at("3GHZ pauli-x").at(kt) - fig3.at("4GHZ pauli-x").at(kt)) > 1e-12) {
            ok = false;
            problems.push_back("fig3 pauli-x panels differ");
        }
    }
    std::string detail = "fig3, fig6, fig7 orderings at kt 0.1, 0.5, 1.0";
    if (!numeric_ok) {
        ok = false;
        detail += "; numeric column disagrees with closed form";
    }
    for (const auto &p : problems) {
        detail += "; " + p;
    }
    return {ok, detail};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"perfect teleportation baseline", perfect_teleportation},
        {"closed-form vs numeric density matrices", closed_vs_numeric_states},
        {"average-fidelity formulas", average_fidelity_formulas},
        {"X-noise universality", x_noise_universality},
        {"robustness ordering", robustness_ordering},
        {"conjecture falsification", conjecture_falsification},
        {"infinitesimal-step structure", infinitesimal_step},
        {"measurement-branch equivalence", measurement_branches},
        {"invariant suite", invariants},
        {"figure reproduction", figure_reproduction},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
