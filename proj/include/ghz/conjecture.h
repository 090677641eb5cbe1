#ifndef GHZ_CONJECTURE_H
#define GHZ_CONJECTURE_H

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ghz/closed_form.h"

namespace ghz {

struct ConjectureRow {
    double kt;
    std::map<NoiseFamily, double> fbar;
    /// Same-axis families whose F-bar is strictly below the mixed-axis F-bar.
    std::vector<NoiseFamily> mixed_beats;
};

struct ConjectureReport {
    int channel_size;
    std::vector<ConjectureRow> rows;
    /// Root of F-bar(mixed) - F-bar(pauli-z) on the grid range, if it changes sign.
    std::optional<double> crossover_vs_z;
    /// Largest |F-bar(3GHZ isotropic) - F-bar(4GHZ isotropic)| on the grid and where.
    double max_isotropic_gap;
    double max_isotropic_gap_kt;
};

/// Default grid kt = 0.01, 0.02, ..., 1.
std::vector<double> conjecture_grid();

/// Compares every family's closed-form F-bar for a 3GHZ or 4GHZ channel.
ConjectureReport conjecture_report(int channel_size, const std::vector<double> &grid = conjecture_grid());

/// Root of f in [lo, hi] by bisection to a bracket of width `width`.
/// f(lo) and f(hi) must have opposite signs.
double bisect_root(const std::function<double(double)> &f, double lo, double hi, double width = 1e-10);

}  // namespace ghz

#endif
