#ifndef GHZ_TELEPORT_H
#define GHZ_TELEPORT_H

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ghz/closed_form.h"
#include "ghz/lindblad.h"
#include "ghz/quadrature.h"
#include "ghz/states.h"

namespace ghz {

/// Tr_Alice[U (rho_in x channel) U^dagger] with U = teleport_circuit(n).
DensityMatrix teleport_output(const DensityMatrix &channel, const BlochAngles &angles);

/// <psi_in|rho_out|psi_in>. Throws std::domain_error when the overlap has an
/// imaginary part above 1e-10.
double fidelity(const DensityMatrix &rho_out, const BlochAngles &angles);

/// The teleportation output as a linear map of the input qubit for a fixed
/// channel state, so that many input angles can be evaluated cheaply.
class TeleportMap {
   public:
    explicit TeleportMap(const DensityMatrix &channel);

    /// Output operator for an arbitrary 2x2 input operator.
    ComplexMatrix output(const ComplexMatrix &rho_in) const;
    double fidelity(const BlochAngles &angles) const;

   private:
    // blocks_[2a + b] is the output for input |a><b|.
    std::array<ComplexMatrix, 4> blocks_;
};

/// Sphere average of the teleportation fidelity through `channel`.
SphereAverage average_fidelity(const DensityMatrix &channel);

struct MeasuredBranch {
    double probability;
    /// Bob's normalized conditional state; empty when the outcome has
    /// (numerically) zero probability.
    std::optional<DensityMatrix> state;
};

/// Projects Alice's register (qubits 1..n_channel after the circuit) onto the
/// computational basis state `outcome` (one 0/1 entry per Alice qubit).
MeasuredBranch teleport_measured(const DensityMatrix &channel, const BlochAngles &angles, std::span<const int> outcome);

/// Exact fidelities of a solved case. The output is a Pauli channel applied
/// to the input, so F = (1 + lx nx^2 + ly ny^2 + lz nz^2) / 2 where n is the
/// input Bloch vector and each shrinking factor is an exponential sum in kt.
class AverageFidelityFormula {
   public:
    explicit AverageFidelityFormula(const ClosedFormCase &c);

    const ClosedFormCase &closed_form_case() const { return case_; }
    const ExpSum &shrink_x() const { return lx_; }
    const ExpSum &shrink_y() const { return ly_; }
    const ExpSum &shrink_z() const { return lz_; }

    double fidelity(double kt, const BlochAngles &angles) const;
    double evaluate(double kt) const;
    /// F-bar as an exponential sum in kt.
    ExpSum average() const;

    /// Copy with the sign of one term flipped; used to check that the
    /// verification harness notices a wrong closed form.
    AverageFidelityFormula mutated() const;

   private:
    ClosedFormCase case_;
    ExpSum lx_, ly_, lz_;
};

double average_fidelity_closed(const ClosedFormCase &c, double kt);
double fidelity_closed(const ClosedFormCase &c, double kt, const BlochAngles &angles);

enum class Evolution { closed_form, integrated };
enum class CurveSource { numeric_pipeline, closed_form };

std::string source_name(CurveSource source);

/// Channel size, noise and a kt grid. For an explicit NoiseSpec kt is
/// measured in units of the largest rate.
struct TeleportScenario {
    int n_channel;
    std::variant<NoiseSpec, ClosedFormCase> noise;
    std::vector<double> kt_grid;
    Evolution evolution = Evolution::integrated;
    /// Integrator step bound in units of 1 / kappa.
    double dt_max_kt = 1e-3;

    /// Checks the grid is ascending and nonnegative and the noise fits.
    void validate() const;
    double reference_kappa() const;
};

struct CurvePoint {
    double kt;
    double fbar;
};

struct FidelityCurve {
    std::vector<CurvePoint> points;
    CurveSource source;
};

/// Channel state of the scenario at each kt in its grid.
std::vector<DensityMatrix> channel_states(const TeleportScenario &scenario);

double average_fidelity_numeric(const TeleportScenario &scenario, double kt);

/// Pipeline curve over the scenario grid.
FidelityCurve fidelity_curve(const TeleportScenario &scenario);

/// Closed-form curve over the scenario grid; the noise must be a ClosedFormCase.
FidelityCurve closed_form_curve(const TeleportScenario &scenario);

}  // namespace ghz

#endif
