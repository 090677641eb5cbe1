#include "ghz/closed_form.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ghz {

namespace {

struct Slot {
    int symbol = -1;
    double sign = 1;
};

// Every solved channel state is supported on the diagonal and the
// anti-diagonal, so a layout is one slot of each per row.
struct CaseData {
    ReducedSystem system;
    std::vector<ExpSum> functions;
    std::vector<Slot> diagonal;
    std::vector<Slot> anti_diagonal;
};

int weight(size_t index) {
    return std::popcount(index);
}

CaseData make_data(std::vector<std::string> symbols, std::vector<ExpSum> functions,
                   std::vector<std::vector<double>> rates, int n) {
    CaseData d;
    d.system.symbols = std::move(symbols);
    d.system.rates = std::move(rates);
    d.functions = std::move(functions);
    for (const auto &f : d.functions) {
        d.system.initial.push_back(f(0));
    }
    d.diagonal.resize(size_t{1} << n);
    d.anti_diagonal.resize(size_t{1} << n);
    return d;
}

// Weight classes min(w, n - w) share one symbol on both the diagonal and the
// anti-diagonal.
void fill_by_class(CaseData &d, int n) {
    for (size_t r = 0; r < d.diagonal.size(); r++) {
        int cls = std::min(weight(r), n - weight(r));
        d.diagonal[r].symbol = cls;
        d.anti_diagonal[r].symbol = cls;
    }
}

void fill_from_table(CaseData &d, const std::string &diag, const std::string &anti) {
    auto index_of = [&](char c) {
        for (size_t i = 0; i < d.system.symbols.size(); i++) {
            if (d.system.symbols[i][0] == c) {
                return static_cast<int>(i);
            }
        }
        throw std::logic_error("closed form table references unknown symbol");
    };
    for (size_t r = 0; r < d.diagonal.size(); r++) {
        d.diagonal[r].symbol = index_of(diag[r]);
        d.anti_diagonal[r].symbol = index_of(anti[r]);
    }
}

CaseData pauli_x_data(int n) {
    switch (n) {
        case 3: {
            auto d = make_data({"a", "b"}, {ExpSum::poly({1, 3}, 8, 4), ExpSum::poly({1, -1}, 8, 4)},
                               {{-3, 3}, {1, -1}}, n);
            fill_by_class(d, n);
            return d;
        }
        case 4: {
            auto d = make_data({"a", "b", "c"},
                               {ExpSum::poly({1, 6, 1}, 16, 4), ExpSum::poly({1, 0, -1}, 16, 4),
                                ExpSum::poly({1, -2, 1}, 16, 4)},
                               {{-4, 4, 0}, {1, -4, 3}, {0, 4, -4}}, n);
            fill_by_class(d, n);
            return d;
        }
        case 5: {
            auto d = make_data({"a", "b", "c"},
                               {ExpSum::poly({1, 10, 5}, 32, 4), ExpSum::poly({1, 2, -3}, 32, 4),
                                ExpSum::poly({1, -2, 1}, 32, 4)},
                               {{-5, 5, 0}, {1, -5, 4}, {0, 2, -2}}, n);
            fill_by_class(d, n);
            return d;
        }
        case 6: {
            auto d = make_data({"a", "b", "c", "d"},
                               {ExpSum::poly({1, 15, 15, 1}, 64, 4), ExpSum::poly({1, 5, -5, -1}, 64, 4),
                                ExpSum::poly({1, -1, -1, 1}, 64, 4), ExpSum::poly({1, -3, 3, -1}, 64, 4)},
                               {{-6, 6, 0, 0}, {1, -6, 5, 0}, {0, 2, -6, 4}, {0, 0, 6, -6}}, n);
            fill_by_class(d, n);
            return d;
        }
    }
    throw std::logic_error("pauli_x_data: unsupported size");
}

CaseData pauli_y_data(int n) {
    if (n == 4) {
        // Same coefficients as x-noise; the anti-diagonal alternates in sign
        // with the Hamming weight of the row.
        CaseData d = pauli_x_data(4);
        for (size_t r = 0; r < d.anti_diagonal.size(); r++) {
            d.anti_diagonal[r].sign = weight(r) % 2 ? -1.0 : 1.0;
        }
        return d;
    }
    auto d = make_data({"a", "b", "d", "e"},
                       {ExpSum::poly({1, 3}, 8, 4), ExpSum::poly({1, -1}, 8, 4), ExpSum::poly({0, 3, 0, 1}, 8, 2),
                        ExpSum::poly({0, 1, 0, -1}, 8, 2)},
                       {{-3, 3, 0, 0}, {1, -1, 0, 0}, {0, 0, -3, 3}, {0, 0, 1, -5}}, n);
    size_t last = d.diagonal.size() - 1;
    for (size_t r = 0; r <= last; r++) {
        d.diagonal[r].symbol = std::min(weight(r), n - weight(r));
        bool corner = r == 0 || r == last;
        d.anti_diagonal[r] = corner ? Slot{2, 1.0} : Slot{3, -1.0};
    }
    return d;
}

CaseData pauli_z_data(int n) {
    double rate = 2.0 * n;
    auto d = make_data({"a", "b"}, {ExpSum::poly({1}, 2, 0), ExpSum::poly({0, 1}, 2, rate)}, {{0, 0}, {0, -rate}}, n);
    size_t last = d.diagonal.size() - 1;
    d.diagonal[0].symbol = d.diagonal[last].symbol = 0;
    d.anti_diagonal[0].symbol = d.anti_diagonal[last].symbol = 1;
    return d;
}

CaseData isotropic_data(int n) {
    CaseData d;
    if (n == 3) {
        d = make_data({"a", "b", "d"},
                      {ExpSum::poly({1, 3}, 8, 8), ExpSum::poly({1, -1}, 8, 8), ExpSum::poly({0, 1}, 2, 12)},
                      {{-6, 6, 0}, {2, -2, 0}, {0, 0, -12}}, n);
    } else {
        d = make_data({"a", "b", "c", "d"},
                      {ExpSum::poly({1, 6, 1}, 16, 8), ExpSum::poly({1, 0, -1}, 16, 8),
                       ExpSum::poly({1, -2, 1}, 16, 8), ExpSum::poly({0, 1}, 2, 16)},
                      {{-8, 8, 0, 0}, {2, -8, 6, 0}, {0, 8, -8, 0}, {0, 0, 0, -16}}, n);
    }
    int corner_symbol = static_cast<int>(d.functions.size()) - 1;
    size_t last = d.diagonal.size() - 1;
    for (size_t r = 0; r <= last; r++) {
        d.diagonal[r].symbol = std::min(weight(r), n - weight(r));
    }
    d.anti_diagonal[0].symbol = d.anti_diagonal[last].symbol = corner_symbol;
    return d;
}

CaseData mixed_data(int n) {
    if (n == 3) {
        ExpSum a = ExpSum::poly({1, 2, 1}, 8, 2);
        ExpSum b = ExpSum::poly({1, -2, 1}, 8, 2);
        ExpSum c = ExpSum::poly({1, 0, -1}, 8, 2);
        auto d = make_data({"a", "b", "c", "d", "e", "f", "g"},
                           {a, b, c, a.times_exp(1, 2), b.times_exp(-1, 2), c.times_exp(-1, 2), c.times_exp(1, 2)},
                           {
                               {-2, 0, 2, 0, 0, 0, 0},
                               {0, -2, 2, 0, 0, 0, 0},
                               {1, 1, -2, 0, 0, 0, 0},
                               {0, 0, 0, -4, 0, -1, 1},
                               {0, 0, 0, 0, -4, 1, -1},
                               {0, 0, 0, -1, 1, -4, 0},
                               {0, 0, 0, 1, -1, 0, -4},
                           },
                           n);
        fill_from_table(d, "abccccba", "defggfed");
        return d;
    }
    ExpSum a = ExpSum::poly({1, 3, 3, 1}, 16, 2);
    ExpSum b = ExpSum::poly({1, 1, -1, -1}, 16, 2);
    ExpSum c = ExpSum::poly({1, -3, 3, -1}, 16, 2);
    ExpSum dd = ExpSum::poly({1, -1, -1, 1}, 16, 2);
    auto d = make_data({"a", "b", "c", "d", "f", "g", "h", "k", "m", "n"},
                       {a, b, c, dd, dd.times_exp(1, 2), a.times_exp(1, 2), b.times_exp(1, 2), dd.times_exp(-1, 2),
                        c.times_exp(-1, 2), b.times_exp(-1, 2)},
                       {
                           {-3, 3, 0, 0, 0, 0, 0, 0, 0, 0},
                           {1, -3, 0, 2, 0, 0, 0, 0, 0, 0},
                           {0, 0, -3, 3, 0, 0, 0, 0, 0, 0},
                           {0, 2, 1, -3, 0, 0, 0, 0, 0, 0},
                           {0, 0, 0, 0, -5, 0, 2, 0, -1, 0},
                           {0, 0, 0, 0, 0, -5, 2, 0, 0, -1},
                           {0, 0, 0, 0, 1, 1, -5, -1, 0, 0},
                           {0, 0, 0, 0, 0, 0, -1, -5, 1, 1},
                           {0, 0, 0, 0, -1, 0, 0, 2, -5, 0},
                           {0, 0, 0, 0, 0, -1, 0, 2, 0, -5},
                       },
                       n);
    fill_from_table(d, "abcdbddbbddbdcba", "ghmknkfhhfknkmhg");
    return d;
}

CaseData case_data(const ClosedFormCase &c) {
    int n = c.channel_size();
    switch (c.family()) {
        case NoiseFamily::pauli_x:
            return pauli_x_data(n);
        case NoiseFamily::pauli_y:
            return pauli_y_data(n);
        case NoiseFamily::pauli_z:
            return pauli_z_data(n);
        case NoiseFamily::isotropic:
            return isotropic_data(n);
        case NoiseFamily::mixed:
            return mixed_data(n);
    }
    throw std::logic_error("case_data: unknown family");
}

}  // namespace

ExpSum ExpSum::poly(std::vector<double> p, double denom, double rate) {
    std::vector<ExpTerm> terms;
    for (size_t k = 0; k < p.size(); k++) {
        if (p[k] != 0) {
            terms.push_back({p[k] / denom, rate * static_cast<double>(k)});
        }
    }
    return ExpSum(std::move(terms));
}

double ExpSum::operator()(double kt) const {
    double sum = 0;
    for (const auto &t : terms_) {
        sum += t.coef * std::exp(-t.rate * kt);
    }
    return sum;
}

double ExpSum::derivative(double kt) const {
    double sum = 0;
    for (const auto &t : terms_) {
        sum -= t.rate * t.coef * std::exp(-t.rate * kt);
    }
    return sum;
}

ExpSum ExpSum::times_exp(double scale, double rate) const {
    std::vector<ExpTerm> out;
    for (const auto &t : terms_) {
        out.push_back({t.coef * scale, t.rate + rate});
    }
    return ExpSum(std::move(out));
}

std::string family_name(NoiseFamily family) {
    switch (family) {
        case NoiseFamily::pauli_x:
            return "pauli-x";
        case NoiseFamily::pauli_y:
            return "pauli-y";
        case NoiseFamily::pauli_z:
            return "pauli-z";
        case NoiseFamily::isotropic:
            return "isotropic";
        case NoiseFamily::mixed:
            return "mixed";
    }
    return "?";
}

std::optional<NoiseFamily> parse_family(std::string_view name) {
    for (auto f : kAllFamilies) {
        if (name == family_name(f)) {
            return f;
        }
    }
    return std::nullopt;
}

NoiseSpec family_noise(NoiseFamily family, int n_channel, double kappa) {
    static constexpr PauliAxis cycle[] = {PauliAxis::x, PauliAxis::y, PauliAxis::z};
    std::vector<NoiseTerm> terms;
    for (int q = 1; q <= n_channel; q++) {
        switch (family) {
            case NoiseFamily::pauli_x:
                terms.push_back({q, PauliAxis::x, kappa});
                break;
            case NoiseFamily::pauli_y:
                terms.push_back({q, PauliAxis::y, kappa});
                break;
            case NoiseFamily::pauli_z:
                terms.push_back({q, PauliAxis::z, kappa});
                break;
            case NoiseFamily::isotropic:
                for (auto axis : cycle) {
                    terms.push_back({q, axis, kappa});
                }
                break;
            case NoiseFamily::mixed:
                terms.push_back({q, cycle[(q - 1) % 3], kappa});
                break;
        }
    }
    return NoiseSpec(std::move(terms));
}

bool ClosedFormCase::supported(int channel_size, NoiseFamily family) {
    switch (channel_size) {
        case 3:
        case 4:
            return true;
        case 5:
        case 6:
            return family == NoiseFamily::pauli_x || family == NoiseFamily::pauli_z;
        default:
            return false;
    }
}

std::string ClosedFormCase::supported_list() {
    return "3GHZ and 4GHZ with pauli-x, pauli-y, pauli-z, isotropic, mixed; 5GHZ and 6GHZ with pauli-x, pauli-z";
}

ClosedFormCase ClosedFormCase::make(int channel_size, NoiseFamily family, double kappa) {
    if (!supported(channel_size, family)) {
        throw std::invalid_argument("no closed form for " + std::to_string(channel_size) + "GHZ " +
                                    family_name(family) + "; supported: " + supported_list());
    }
    if (!(kappa > 0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("ClosedFormCase: kappa must be finite and > 0");
    }
    return ClosedFormCase(channel_size, family, kappa);
}

std::vector<ClosedFormCase> ClosedFormCase::all(double kappa) {
    std::vector<ClosedFormCase> out;
    for (int n = 3; n <= 6; n++) {
        for (auto f : kAllFamilies) {
            if (supported(n, f)) {
                out.push_back(make(n, f, kappa));
            }
        }
    }
    return out;
}

std::string ClosedFormCase::name() const {
    return std::to_string(channel_size_) + "GHZ " + family_name(family_);
}

ReducedSystem reduced_system(const ClosedFormCase &c) {
    return case_data(c).system;
}

std::map<std::string, ExpSum> coefficient_functions(const ClosedFormCase &c) {
    CaseData d = case_data(c);
    std::map<std::string, ExpSum> out;
    for (size_t i = 0; i < d.functions.size(); i++) {
        out.emplace(d.system.symbols[i], d.functions[i]);
    }
    return out;
}

std::map<std::string, double> ansatz_ode_coefficients(const ClosedFormCase &c, double t) {
    if (!(t >= 0)) {
        throw std::invalid_argument("ansatz_ode_coefficients: t must be >= 0");
    }
    std::map<std::string, double> out;
    for (const auto &[name, f] : coefficient_functions(c)) {
        out[name] = f(c.kappa() * t);
    }
    return out;
}

std::map<std::string, double> integrate_reduced_system(const ClosedFormCase &c, double t, int steps) {
    if (!(t >= 0) || steps < 1) {
        throw std::invalid_argument("integrate_reduced_system: need t >= 0 and steps >= 1");
    }
    ReducedSystem sys = reduced_system(c);
    size_t m = sys.symbols.size();
    auto f = [&](const std::vector<double> &y) {
        std::vector<double> dy(m, 0.0);
        for (size_t i = 0; i < m; i++) {
            for (size_t j = 0; j < m; j++) {
                dy[i] += sys.rates[i][j] * y[j];
            }
        }
        return dy;
    };
    auto axpy = [&](const std::vector<double> &y, const std::vector<double> &k, double h) {
        std::vector<double> out(y);
        for (size_t i = 0; i < m; i++) {
            out[i] += h * k[i];
        }
        return out;
    };

    double h = c.kappa() * t / steps;
    std::vector<double> y = sys.initial;
    for (int s = 0; s < steps; s++) {
        auto k1 = f(y);
        auto k2 = f(axpy(y, k1, h / 2));
        auto k3 = f(axpy(y, k2, h / 2));
        auto k4 = f(axpy(y, k3, h));
        for (size_t i = 0; i < m; i++) {
            y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        }
    }
    std::map<std::string, double> out;
    for (size_t i = 0; i < m; i++) {
        out[sys.symbols[i]] = y[i];
    }
    return out;
}

DensityMatrix evolve_closed_form(const ClosedFormCase &c, double t) {
    if (!(t >= 0)) {
        throw std::invalid_argument("evolve_closed_form: t must be >= 0");
    }
    CaseData d = case_data(c);
    double kt = c.kappa() * t;
    std::vector<double> values;
    for (const auto &f : d.functions) {
        values.push_back(f(kt));
    }
    size_t dim = d.diagonal.size();
    ComplexMatrix m(dim, dim);
    for (size_t r = 0; r < dim; r++) {
        if (d.diagonal[r].symbol >= 0) {
            m(r, r) = d.diagonal[r].sign * values[d.diagonal[r].symbol];
        }
        if (d.anti_diagonal[r].symbol >= 0) {
            m(r, dim - 1 - r) = d.anti_diagonal[r].sign * values[d.anti_diagonal[r].symbol];
        }
    }
    return DensityMatrix::from_matrix(std::move(m));
}

}  // namespace ghz
