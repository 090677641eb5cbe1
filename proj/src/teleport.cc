#include "ghz/teleport.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ghz/parallel.h"

namespace ghz {

namespace {

constexpr double kImagTol = 1e-10;
constexpr double kZeroProbability = 1e-14;

const CircuitUnitary &cached_circuit(int n_channel) {
    static const std::vector<CircuitUnitary> circuits = [] {
        std::vector<CircuitUnitary> out;
        for (int n = 2; n <= 6; n++) {
            out.push_back(teleport_circuit(n));
        }
        return out;
    }();
    if (n_channel < 2 || n_channel > 6) {
        throw std::invalid_argument("teleport: channel size must be 2..6, got " + std::to_string(n_channel));
    }
    return circuits[n_channel - 2];
}

// U (input x channel) U^dagger on the full register.
ComplexMatrix circuit_state(const ComplexMatrix &input, const DensityMatrix &channel) {
    const ComplexMatrix &u = cached_circuit(channel.n_qubits()).matrix();
    ComplexMatrix left = matmul(u, kron(input, channel.matrix()));
    // left * U^dagger = (U * left^dagger)^dagger; U is sparse, so keep it on the left.
    return dagger(matmul(u, dagger(left)));
}

ComplexMatrix bob_output(const ComplexMatrix &input, const DensityMatrix &channel) {
    int n = channel.n_qubits();
    std::vector<int> alice(n);
    for (int q = 1; q <= n; q++) {
        alice[q - 1] = q;
    }
    return partial_trace(circuit_state(input, channel), n + 1, alice);
}

ExpSum decay(double rate) {
    return ExpSum({{1.0, rate}});
}

}  // namespace

DensityMatrix teleport_output(const DensityMatrix &channel, const BlochAngles &angles) {
    ComplexMatrix input = bloch_input(angles).projector();
    return DensityMatrix::from_matrix(bob_output(input, channel));
}

double fidelity(const DensityMatrix &rho_out, const BlochAngles &angles) {
    if (rho_out.n_qubits() != 1) {
        throw std::invalid_argument("fidelity: expected a one-qubit state, got " +
                                    std::to_string(rho_out.n_qubits()) + " qubits");
    }
    Complex f = bloch_input(angles).expectation(rho_out.matrix());
    if (std::abs(f.imag()) > kImagTol) {
        throw std::domain_error("fidelity: overlap has imaginary part " + std::to_string(f.imag()));
    }
    return f.real();
}

TeleportMap::TeleportMap(const DensityMatrix &channel)
    : blocks_{ComplexMatrix(2, 2), ComplexMatrix(2, 2), ComplexMatrix(2, 2), ComplexMatrix(2, 2)} {
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            ComplexMatrix unit(2, 2);
            unit(a, b) = 1.0;
            blocks_[2 * a + b] = bob_output(unit, channel);
        }
    }
}

ComplexMatrix TeleportMap::output(const ComplexMatrix &rho_in) const {
    if (rho_in.rows() != 2 || rho_in.cols() != 2) {
        throw std::invalid_argument("TeleportMap: input must be 2x2, got " + rho_in.shape());
    }
    ComplexMatrix out(2, 2);
    for (int k = 0; k < 4; k++) {
        out.add_scaled(blocks_[k], rho_in(k / 2, k % 2));
    }
    return out;
}

double TeleportMap::fidelity(const BlochAngles &angles) const {
    StateVector psi = bloch_input(angles);
    ComplexMatrix rho_in = psi.projector();
    Complex f = psi.expectation(output(rho_in));
    if (std::abs(f.imag()) > kImagTol) {
        throw std::domain_error("fidelity: overlap has imaginary part " + std::to_string(f.imag()));
    }
    return f.real();
}

SphereAverage average_fidelity(const DensityMatrix &channel) {
    TeleportMap map(channel);
    return sphere_average([&](double theta, double phi) { return map.fidelity(BlochAngles(theta, phi)); });
}

MeasuredBranch teleport_measured(const DensityMatrix &channel, const BlochAngles &angles,
                                 std::span<const int> outcome) {
    int n = channel.n_qubits();
    if (static_cast<int>(outcome.size()) != n) {
        throw std::invalid_argument("teleport_measured: outcome must have " + std::to_string(n) + " bits, got " +
                                    std::to_string(outcome.size()));
    }
    size_t prefix = 0;
    for (int bit : outcome) {
        if (bit != 0 && bit != 1) {
            throw std::invalid_argument("teleport_measured: outcome bits must be 0 or 1");
        }
        prefix = (prefix << 1) | static_cast<size_t>(bit);
    }
    ComplexMatrix sigma = circuit_state(bloch_input(angles).projector(), channel);
    ComplexMatrix bob(2, 2);
    for (size_t r = 0; r < 2; r++) {
        for (size_t c = 0; c < 2; c++) {
            bob(r, c) = sigma(2 * prefix + r, 2 * prefix + c);
        }
    }
    double p = trace(bob).real();
    if (p <= kZeroProbability) {
        return {std::max(p, 0.0), std::nullopt};
    }
    bob *= 1.0 / p;
    return {p, DensityMatrix::from_matrix(std::move(bob))};
}

AverageFidelityFormula::AverageFidelityFormula(const ClosedFormCase &c) : case_(c) {
    int n = c.channel_size();
    ExpSum one = decay(0);
    switch (c.family()) {
        case NoiseFamily::pauli_x:
            lx_ = one;
            ly_ = lz_ = decay(4);
            break;
        case NoiseFamily::pauli_y:
            if (n == 3) {
                lx_ = decay(6);
                ly_ = decay(2);
                lz_ = decay(4);
            } else {
                lx_ = decay(8);
                ly_ = lz_ = decay(4);
            }
            break;
        case NoiseFamily::pauli_z:
            lx_ = ly_ = decay(2.0 * n);
            lz_ = one;
            break;
        case NoiseFamily::isotropic:
            lx_ = ly_ = decay(n == 3 ? 12 : 16);
            lz_ = decay(8);
            break;
        case NoiseFamily::mixed:
            if (n == 3) {
                lx_ = decay(4);
                ly_ = lz_ = decay(2);
            } else {
                lx_ = decay(4);
                ly_ = decay(6);
                lz_ = decay(2);
            }
            break;
    }
}

double AverageFidelityFormula::fidelity(double kt, const BlochAngles &angles) const {
    double st = std::sin(angles.theta()), ct = std::cos(angles.theta());
    double nx = st * std::cos(angles.phi()), ny = st * std::sin(angles.phi());
    return 0.5 * (1 + lx_(kt) * nx * nx + ly_(kt) * ny * ny + lz_(kt) * ct * ct);
}

double AverageFidelityFormula::evaluate(double kt) const {
    return average()(kt);
}

ExpSum AverageFidelityFormula::average() const {
    std::vector<ExpTerm> terms{{0.5, 0}};
    for (const ExpSum *l : {&lx_, &ly_, &lz_}) {
        for (const auto &t : l->terms()) {
            terms.push_back({t.coef / 6, t.rate});
        }
    }
    return ExpSum(std::move(terms));
}

AverageFidelityFormula AverageFidelityFormula::mutated() const {
    AverageFidelityFormula copy = *this;
    copy.lx_.terms().front().coef *= -1;
    return copy;
}

double average_fidelity_closed(const ClosedFormCase &c, double kt) {
    return AverageFidelityFormula(c).evaluate(kt);
}

double fidelity_closed(const ClosedFormCase &c, double kt, const BlochAngles &angles) {
    return AverageFidelityFormula(c).fidelity(kt, angles);
}

std::string source_name(CurveSource source) {
    return source == CurveSource::closed_form ? "closed_form" : "numeric_pipeline";
}

void TeleportScenario::validate() const {
    if (n_channel < 2 || n_channel > 6) {
        throw std::invalid_argument("channel size must be 2..6, got " + std::to_string(n_channel));
    }
    double previous = 0;
    for (double kt : kt_grid) {
        if (!std::isfinite(kt) || kt < previous) {
            throw std::invalid_argument("time grid must be ascending and nonnegative");
        }
        previous = kt;
    }
    if (!(dt_max_kt > 0)) {
        throw std::invalid_argument("dt_max must be > 0");
    }
    if (const auto *spec = std::get_if<NoiseSpec>(&noise)) {
        spec->validate_for(n_channel);
        if (evolution == Evolution::closed_form) {
            throw std::invalid_argument("closed-form evolution needs a solved case, not an explicit noise list");
        }
    } else if (std::get<ClosedFormCase>(noise).channel_size() != n_channel) {
        throw std::invalid_argument("closed-form case does not match the channel size");
    }
}

double TeleportScenario::reference_kappa() const {
    if (const auto *c = std::get_if<ClosedFormCase>(&noise)) {
        return c->kappa();
    }
    double k = std::get<NoiseSpec>(noise).max_kappa();
    return k > 0 ? k : 1.0;
}

std::vector<DensityMatrix> channel_states(const TeleportScenario &scenario) {
    scenario.validate();
    double kappa = scenario.reference_kappa();
    const auto *c = std::get_if<ClosedFormCase>(&scenario.noise);
    if (c && scenario.evolution == Evolution::closed_form) {
        std::vector<DensityMatrix> out;
        for (double kt : scenario.kt_grid) {
            out.push_back(evolve_closed_form(*c, kt / kappa));
        }
        return out;
    }
    NoiseSpec spec = c ? c->noise() : std::get<NoiseSpec>(scenario.noise);
    std::vector<double> times;
    for (double kt : scenario.kt_grid) {
        times.push_back(kt / kappa);
    }
    DensityMatrix rho0 = DensityMatrix::pure(ghz_state(scenario.n_channel));
    return evolve_numeric_grid(rho0, spec, times, scenario.dt_max_kt / kappa);
}

double average_fidelity_numeric(const TeleportScenario &scenario, double kt) {
    TeleportScenario single = scenario;
    single.kt_grid = {kt};
    return average_fidelity(channel_states(single).front()).value;
}

FidelityCurve fidelity_curve(const TeleportScenario &scenario) {
    std::vector<DensityMatrix> states = channel_states(scenario);
    auto values = parallel_map<double>(states.size(), [&](size_t i) { return average_fidelity(states[i]).value; });
    FidelityCurve curve{{}, CurveSource::numeric_pipeline};
    for (size_t i = 0; i < values.size(); i++) {
        curve.points.push_back({scenario.kt_grid[i], values[i]});
    }
    return curve;
}

FidelityCurve closed_form_curve(const TeleportScenario &scenario) {
    scenario.validate();
    const auto *c = std::get_if<ClosedFormCase>(&scenario.noise);
    if (!c) {
        throw std::invalid_argument("closed_form_curve: scenario noise is not a solved case");
    }
    AverageFidelityFormula formula(*c);
    FidelityCurve curve{{}, CurveSource::closed_form};
    for (double kt : scenario.kt_grid) {
        curve.points.push_back({kt, formula.evaluate(kt)});
    }
    return curve;
}

}  // namespace ghz
