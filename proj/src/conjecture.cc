#include "ghz/conjecture.h"

#include <cmath>
#include <stdexcept>

#include "ghz/teleport.h"

namespace ghz {

std::vector<double> conjecture_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 100; i++) {
        grid.push_back(i / 100.0);
    }
    return grid;
}

double bisect_root(const std::function<double(double)> &f, double lo, double hi, double width) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0) {
        return lo;
    }
    if (fhi == 0) {
        return hi;
    }
    if ((flo > 0) == (fhi > 0)) {
        throw std::invalid_argument("bisect_root: no sign change on the bracket");
    }
    while (hi - lo > width) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0) {
            return mid;
        }
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ConjectureReport conjecture_report(int channel_size, const std::vector<double> &grid) {
    if (channel_size != 3 && channel_size != 4) {
        throw std::invalid_argument("conjecture_report: channel size must be 3 or 4");
    }
    std::map<NoiseFamily, ExpSum> fbar;
    for (auto f : kAllFamilies) {
        fbar.emplace(f, AverageFidelityFormula(ClosedFormCase::make(channel_size, f, 1.0)).average());
    }
    ExpSum iso3 = AverageFidelityFormula(ClosedFormCase::make(3, NoiseFamily::isotropic, 1.0)).average();
    ExpSum iso4 = AverageFidelityFormula(ClosedFormCase::make(4, NoiseFamily::isotropic, 1.0)).average();

    ConjectureReport report{channel_size, {}, std::nullopt, 0.0, 0.0};
    for (double kt : grid) {
        ConjectureRow row{kt, {}, {}};
        for (const auto &[family, f] : fbar) {
            row.fbar[family] = f(kt);
        }
        double mixed = row.fbar[NoiseFamily::mixed];
        for (const auto &[family, value] : row.fbar) {
            if (family != NoiseFamily::mixed && mixed > value) {
                row.mixed_beats.push_back(family);
            }
        }
        double gap = std::abs(iso3(kt) - iso4(kt));
        if (gap > report.max_isotropic_gap) {
            report.max_isotropic_gap = gap;
            report.max_isotropic_gap_kt = kt;
        }
        report.rows.push_back(std::move(row));
    }

    auto diff = [&](double kt) { return fbar.at(NoiseFamily::mixed)(kt) - fbar.at(NoiseFamily::pauli_z)(kt); };
    for (size_t i = 1; i < grid.size(); i++) {
        double a = diff(grid[i - 1]);
        double b = diff(grid[i]);
        if ((a > 0 && b < 0) || (a < 0 && b > 0)) {
            report.crossover_vs_z = bisect_root(diff, grid[i - 1], grid[i]);
            break;
        }
    }
    return report;
}

}  // namespace ghz
