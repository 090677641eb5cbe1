#ifndef GHZ_STATES_H
#define GHZ_STATES_H

#include <string>
#include <vector>

#include "ghz/linalg.h"

namespace ghz {

/// Polar and azimuthal angles of the qubit to be teleported.
class BlochAngles {
   public:
    /// Throws std::invalid_argument if theta is outside [0, pi] or phi outside
    /// [0, 2 pi) by more than 1e-12.
    BlochAngles(double theta, double phi);

    double theta() const { return theta_; }
    double phi() const { return phi_; }

   private:
    double theta_;
    double phi_;
};

/// Unitary acting on an n-qubit register. Construction checks U^dagger U = I.
class CircuitUnitary {
   public:
    CircuitUnitary(int n_qubits, ComplexMatrix matrix);

    int n_qubits() const { return n_qubits_; }
    const ComplexMatrix &matrix() const { return matrix_; }

    /// this * other, i.e. `other` is applied first.
    CircuitUnitary then_after(const CircuitUnitary &other) const;

   private:
    int n_qubits_;
    ComplexMatrix matrix_;
};

enum class GateKind { X, Y, Z, H, CNOT, CZ };

/// A named gate with 1-based qubit operands. `control` is 0 for single-qubit gates.
struct Gate {
    GateKind kind;
    int target;
    int control = 0;

    static Gate x(int q) { return {GateKind::X, q}; }
    static Gate y(int q) { return {GateKind::Y, q}; }
    static Gate z(int q) { return {GateKind::Z, q}; }
    static Gate h(int q) { return {GateKind::H, q}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, target, control}; }
    static Gate cz(int control, int target) { return {GateKind::CZ, target, control}; }

    std::string str() const;
    bool operator==(const Gate &) const = default;
};

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();

/// (|0...0> + |1...1>)/sqrt(2) on n qubits, 2 <= n <= 6.
StateVector ghz_state(int n);

/// cos(theta/2) e^{i phi/2}|0> + sin(theta/2) e^{-i phi/2}|1>.
StateVector bloch_input(const BlochAngles &angles);

/// `g` embedded in an n-qubit register (qubit 1 most significant).
CircuitUnitary gate(const Gate &g, int n_qubits);

/// Product of `gates`, the first entry applied first.
CircuitUnitary circuit_unitary(const std::vector<Gate> &gates, int n_qubits);

/// Gate sequence of the teleportation circuit with an n_channel-qubit GHZ
/// channel (register of n_channel + 1 qubits; qubit 1 is the payload, the
/// last qubit is Bob's):
///   CNOT(1 -> q) for q = 2..n_channel, H(1),
///   CNOT(n_channel -> n_channel + 1), CZ(1 -> n_channel + 1).
std::vector<Gate> teleport_gates(int n_channel);

/// Unitary of teleport_gates(n_channel). n_channel must be in 2..6.
CircuitUnitary teleport_circuit(int n_channel);

}  // namespace ghz

#endif
