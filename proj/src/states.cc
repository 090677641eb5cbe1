#include "ghz/states.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ghz {

namespace {

constexpr double kAngleSlack = 1e-12;

void check_qubit(int q, int n_qubits, const char *what) {
    if (q < 1 || q > n_qubits) {
        throw std::invalid_argument(
            std::string("gate: ") + what + " qubit " + std::to_string(q) + " outside 1.." + std::to_string(n_qubits));
    }
}

size_t bit_of(int q, int n_qubits) {
    return size_t{1} << (n_qubits - q);
}

ComplexMatrix single_qubit_embedding(const ComplexMatrix &op, int q, int n_qubits) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int k = 1; k <= n_qubits; k++) {
        out = kron(out, k == q ? op : ComplexMatrix::identity(2));
    }
    return out;
}

}  // namespace

BlochAngles::BlochAngles(double theta, double phi) : theta_(theta), phi_(phi) {
    if (!(theta >= -kAngleSlack && theta <= std::numbers::pi + kAngleSlack)) {
        throw std::invalid_argument("BlochAngles: theta " + std::to_string(theta) + " outside [0, pi]");
    }
    if (!(phi >= -kAngleSlack && phi < 2 * std::numbers::pi + kAngleSlack)) {
        throw std::invalid_argument("BlochAngles: phi " + std::to_string(phi) + " outside [0, 2pi)");
    }
}

CircuitUnitary::CircuitUnitary(int n_qubits, ComplexMatrix matrix) : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    size_t dim = size_t{1} << n_qubits;
    if (n_qubits < 1 || matrix_.rows() != dim || matrix_.cols() != dim) {
        throw std::invalid_argument(
            "CircuitUnitary: matrix " + matrix_.shape() + " does not act on " + std::to_string(n_qubits) + " qubits");
    }
    double err = max_abs_diff(matmul(dagger(matrix_), matrix_), ComplexMatrix::identity(dim));
    if (err > 1e-10) {
        throw std::invalid_argument("CircuitUnitary: matrix is not unitary (deviation " + std::to_string(err) + ")");
    }
}

CircuitUnitary CircuitUnitary::then_after(const CircuitUnitary &other) const {
    if (other.n_qubits_ != n_qubits_) {
        throw std::invalid_argument("CircuitUnitary: register size mismatch");
    }
    return CircuitUnitary(n_qubits_, matmul(matrix_, other.matrix_));
}

std::string Gate::str() const {
    switch (kind) {
        case GateKind::X:
            return "X(" + std::to_string(target) + ")";
        case GateKind::Y:
            return "Y(" + std::to_string(target) + ")";
        case GateKind::Z:
            return "Z(" + std::to_string(target) + ")";
        case GateKind::H:
            return "H(" + std::to_string(target) + ")";
        case GateKind::CNOT:
            return "CNOT(" + std::to_string(control) + "->" + std::to_string(target) + ")";
        case GateKind::CZ:
            return "CZ(" + std::to_string(control) + "->" + std::to_string(target) + ")";
    }
    return "?";
}

ComplexMatrix pauli_x() {
    return ComplexMatrix::from_rows({{0, 1}, {1, 0}});
}

ComplexMatrix pauli_y() {
    return ComplexMatrix::from_rows({{0, Complex(0, -1)}, {Complex(0, 1), 0}});
}

ComplexMatrix pauli_z() {
    return ComplexMatrix::from_rows({{1, 0}, {0, -1}});
}

ComplexMatrix hadamard() {
    double r = 1 / std::sqrt(2.0);
    return ComplexMatrix::from_rows({{r, r}, {r, -r}});
}

StateVector ghz_state(int n) {
    if (n < 2 || n > 6) {
        throw std::invalid_argument("ghz_state: n must be in 2..6, got " + std::to_string(n));
    }
    std::vector<Complex> amps(size_t{1} << n);
    amps.front() = 1 / std::sqrt(2.0);
    amps.back() = 1 / std::sqrt(2.0);
    return StateVector(std::move(amps));
}

StateVector bloch_input(const BlochAngles &angles) {
    double half = angles.theta() / 2;
    Complex up = std::cos(half) * std::polar(1.0, angles.phi() / 2);
    Complex down = std::sin(half) * std::polar(1.0, -angles.phi() / 2);
    return StateVector({up, down});
}

CircuitUnitary gate(const Gate &g, int n_qubits) {
    if (n_qubits < 1 || n_qubits > 8) {
        throw std::invalid_argument("gate: register size must be in 1..8, got " + std::to_string(n_qubits));
    }
    check_qubit(g.target, n_qubits, "target");
    size_t dim = size_t{1} << n_qubits;

    switch (g.kind) {
        case GateKind::X:
            return CircuitUnitary(n_qubits, single_qubit_embedding(pauli_x(), g.target, n_qubits));
        case GateKind::Y:
            return CircuitUnitary(n_qubits, single_qubit_embedding(pauli_y(), g.target, n_qubits));
        case GateKind::Z:
            return CircuitUnitary(n_qubits, single_qubit_embedding(pauli_z(), g.target, n_qubits));
        case GateKind::H:
            return CircuitUnitary(n_qubits, single_qubit_embedding(hadamard(), g.target, n_qubits));
        case GateKind::CNOT:
        case GateKind::CZ: {
            check_qubit(g.control, n_qubits, "control");
            if (g.control == g.target) {
                throw std::invalid_argument("gate: control and target coincide (" + g.str() + ")");
            }
            size_t cbit = bit_of(g.control, n_qubits);
            size_t tbit = bit_of(g.target, n_qubits);
            ComplexMatrix m(dim, dim);
            for (size_t col = 0; col < dim; col++) {
                bool control_set = (col & cbit) != 0;
                if (g.kind == GateKind::CNOT) {
                    m(control_set ? col ^ tbit : col, col) = 1.0;
                } else {
                    m(col, col) = (control_set && (col & tbit)) ? -1.0 : 1.0;
                }
            }
            return CircuitUnitary(n_qubits, std::move(m));
        }
    }
    throw std::invalid_argument("gate: unknown gate kind");
}

CircuitUnitary circuit_unitary(const std::vector<Gate> &gates, int n_qubits) {
    CircuitUnitary u(n_qubits, ComplexMatrix::identity(size_t{1} << n_qubits));
    for (const auto &g : gates) {
        u = gate(g, n_qubits).then_after(u);
    }
    return u;
}

std::vector<Gate> teleport_gates(int n_channel) {
    if (n_channel < 2 || n_channel > 6) {
        throw std::invalid_argument("teleport_circuit: channel size must be 2..6, got " + std::to_string(n_channel));
    }
    int bob = n_channel + 1;
    std::vector<Gate> gates;
    for (int q = 2; q <= n_channel; q++) {
        gates.push_back(Gate::cnot(1, q));
    }
    gates.push_back(Gate::h(1));
    gates.push_back(Gate::cnot(n_channel, bob));
    gates.push_back(Gate::cz(1, bob));
    return gates;
}

CircuitUnitary teleport_circuit(int n_channel) {
    return circuit_unitary(teleport_gates(n_channel), n_channel + 1);
}

}  // namespace ghz
