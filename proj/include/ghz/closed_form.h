#ifndef GHZ_CLOSED_FORM_H
#define GHZ_CLOSED_FORM_H

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghz/lindblad.h"

namespace ghz {

/// One term coef * exp(-rate * kt) of an exponential sum.
struct ExpTerm {
    double coef;
    double rate;
};

/// sum_k coef_k exp(-rate_k * kt); every coefficient function and average
/// fidelity of the solved channels has this shape.
class ExpSum {
   public:
    ExpSum() = default;
    explicit ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {}

    /// (p[0] + p[1] E + p[2] E^2 + ...) / denom with E = exp(-rate * kt).
    static ExpSum poly(std::vector<double> p, double denom, double rate);

    double operator()(double kt) const;
    /// Derivative with respect to kt.
    double derivative(double kt) const;

    /// This sum times scale * exp(-rate * kt).
    ExpSum times_exp(double scale, double rate) const;

    const std::vector<ExpTerm> &terms() const { return terms_; }
    std::vector<ExpTerm> &terms() { return terms_; }

   private:
    std::vector<ExpTerm> terms_;
};

enum class NoiseFamily { pauli_x, pauli_y, pauli_z, isotropic, mixed };

/// "pauli-x", "pauli-y", "pauli-z", "isotropic", "mixed"
std::string family_name(NoiseFamily family);
std::optional<NoiseFamily> parse_family(std::string_view name);
inline constexpr NoiseFamily kAllFamilies[] = {NoiseFamily::pauli_x, NoiseFamily::pauli_y, NoiseFamily::pauli_z,
                                               NoiseFamily::isotropic, NoiseFamily::mixed};

/// Noise on channel qubits 1..n_channel with equal rate kappa. The mixed
/// family cycles the axes x, y, z, x, ... over the qubits.
NoiseSpec family_noise(NoiseFamily family, int n_channel, double kappa);

/// A (channel size, noise family) pair with a known exact solution.
class ClosedFormCase {
   public:
    /// Throws std::invalid_argument naming the supported pairs when
    /// (channel_size, family) has no closed form, or when kappa <= 0.
    static ClosedFormCase make(int channel_size, NoiseFamily family, double kappa);
    static bool supported(int channel_size, NoiseFamily family);
    static std::string supported_list();
    /// Every supported case at rate kappa, ordered by size then family.
    static std::vector<ClosedFormCase> all(double kappa);

    int channel_size() const { return channel_size_; }
    NoiseFamily family() const { return family_; }
    double kappa() const { return kappa_; }
    NoiseSpec noise() const { return family_noise(family_, channel_size_, kappa_); }

    /// e.g. "4GHZ pauli-x"
    std::string name() const;

   private:
    ClosedFormCase(int n, NoiseFamily f, double k) : channel_size_(n), family_(f), kappa_(k) {}

    int channel_size_;
    NoiseFamily family_;
    double kappa_;
};

/// Reduced coupled system d/d(kt) c = R c for the coefficient functions of a
/// case. Rates are in units of kappa.
struct ReducedSystem {
    std::vector<std::string> symbols;
    std::vector<std::vector<double>> rates;
    std::vector<double> initial;
};

ReducedSystem reduced_system(const ClosedFormCase &c);

/// Closed-form coefficient functions of the case, as functions of kt.
std::map<std::string, ExpSum> coefficient_functions(const ClosedFormCase &c);

/// Coefficient values at time t (not kt).
std::map<std::string, double> ansatz_ode_coefficients(const ClosedFormCase &c, double t);

/// RK4 integration of reduced_system(c) to time t with `steps` steps.
std::map<std::string, double> integrate_reduced_system(const ClosedFormCase &c, double t, int steps);

/// Exact channel state at time t.
DensityMatrix evolve_closed_form(const ClosedFormCase &c, double t);

}  // namespace ghz

#endif
