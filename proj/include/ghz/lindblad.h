#ifndef GHZ_LINDBLAD_H
#define GHZ_LINDBLAD_H

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz/linalg.h"

namespace ghz {

enum class PauliAxis { x, y, z };

char axis_char(PauliAxis axis);
std::optional<PauliAxis> parse_axis(char c);

/// Lindblad operator sqrt(kappa) sigma_axis on `qubit` (1-based within the
/// register the noise is applied to).
struct NoiseTerm {
    int qubit;
    PauliAxis axis;
    double kappa;

    bool operator==(const NoiseTerm &) const = default;
};

class NoiseSpec {
   public:
    NoiseSpec() = default;
    /// Throws std::invalid_argument for negative or non-finite rates, qubit
    /// indices below 1, or a repeated (qubit, axis) pair.
    explicit NoiseSpec(std::vector<NoiseTerm> terms);

    const std::vector<NoiseTerm> &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    double max_kappa() const;

    /// Throws std::invalid_argument if any term addresses a qubit above n_qubits.
    void validate_for(int n_qubits) const;

    /// e.g. "1x:0.5,2y:0.5"
    std::string str() const;

   private:
    std::vector<NoiseTerm> terms_;
};

/// Raised by evolve_numeric when the state leaves the physical set.
class IntegrationError : public std::runtime_error {
   public:
    IntegrationError(long step, const std::string &what);
    long step() const { return step_; }

   private:
    long step_;
};

class DensityMatrix {
   public:
    /// Validates Hermiticity (1e-10), unit trace (1e-10) and a minimum
    /// eigenvalue of at least -1e-8. Throws std::invalid_argument otherwise.
    static DensityMatrix from_matrix(ComplexMatrix m);
    static DensityMatrix pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix &matrix() const { return matrix_; }
    const Complex &operator()(size_t r, size_t c) const { return matrix_(r, c); }

    double min_eigenvalue() const;

   private:
    DensityMatrix(int n_qubits, ComplexMatrix m) : n_qubits_(n_qubits), matrix_(std::move(m)) {}

    int n_qubits_;
    ComplexMatrix matrix_;
};

/// sum_k kappa_k (sigma_k rho sigma_k - rho)
ComplexMatrix lindblad_rhs(const ComplexMatrix &rho, const NoiseSpec &noise);
ComplexMatrix lindblad_rhs(const DensityMatrix &rho, const NoiseSpec &noise);

/// 1e-3 / max kappa (1e-3 when there is no noise).
double default_dt_max(const NoiseSpec &noise);

/// Fixed-step RK4 from 0 to t with ceil(t / dt_max) equal steps, the result
/// re-symmetrized after each step. Throws IntegrationError when the trace
/// drifts by more than 1e-6 or an eigenvalue drops below -1e-6.
DensityMatrix evolve_numeric(const DensityMatrix &rho0, const NoiseSpec &noise, double t, double dt_max);

/// States at each entry of `times` (ascending), integrating segment by segment.
std::vector<DensityMatrix> evolve_numeric_grid(const DensityMatrix &rho0, const NoiseSpec &noise,
                                               std::span<const double> times, double dt_max);

}  // namespace ghz

#endif
