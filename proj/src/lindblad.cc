#include "ghz/lindblad.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace ghz {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigenTol = 1e-8;
constexpr double kStepTol = 1e-6;

double sign_of_bit(size_t index, size_t mask) {
    return (index & mask) ? -1.0 : 1.0;
}

long step_count(double t, double dt_max) {
    // Guard against t / dt_max landing a hair above an integer.
    double ratio = t / dt_max;
    return std::max(1L, static_cast<long>(std::ceil(ratio * (1 - 1e-12))));
}

void rhs_into(const ComplexMatrix &rho, const NoiseSpec &noise, int n_qubits, ComplexMatrix &out) {
    size_t dim = rho.rows();
    std::fill(out.data().begin(), out.data().end(), Complex{});
    for (const auto &term : noise.terms()) {
        size_t m = size_t{1} << (n_qubits - term.qubit);
        double k = term.kappa;
        if (k == 0) {
            continue;
        }
        for (size_t j = 0; j < dim; j++) {
            for (size_t c = 0; c < dim; c++) {
                Complex conj_term;
                switch (term.axis) {
                    case PauliAxis::x:
                        conj_term = rho(j ^ m, c ^ m);
                        break;
                    case PauliAxis::y:
                        conj_term = sign_of_bit(j, m) * sign_of_bit(c, m) * rho(j ^ m, c ^ m);
                        break;
                    case PauliAxis::z:
                        conj_term = sign_of_bit(j, m) * sign_of_bit(c, m) * rho(j, c);
                        break;
                }
                out(j, c) += k * (conj_term - rho(j, c));
            }
        }
    }
}

void symmetrize(ComplexMatrix &m) {
    size_t dim = m.rows();
    for (size_t r = 0; r < dim; r++) {
        m(r, r) = m(r, r).real();
        for (size_t c = r + 1; c < dim; c++) {
            Complex avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
            m(r, c) = avg;
            m(c, r) = std::conj(avg);
        }
    }
}

}  // namespace

char axis_char(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::x:
            return 'x';
        case PauliAxis::y:
            return 'y';
        case PauliAxis::z:
            return 'z';
    }
    return '?';
}

std::optional<PauliAxis> parse_axis(char c) {
    switch (c) {
        case 'x':
        case 'X':
            return PauliAxis::x;
        case 'y':
        case 'Y':
            return PauliAxis::y;
        case 'z':
        case 'Z':
            return PauliAxis::z;
        default:
            return std::nullopt;
    }
}

NoiseSpec::NoiseSpec(std::vector<NoiseTerm> terms) : terms_(std::move(terms)) {
    std::set<std::pair<int, PauliAxis>> seen;
    for (const auto &t : terms_) {
        if (!std::isfinite(t.kappa) || t.kappa < 0) {
            throw std::invalid_argument("NoiseSpec: kappa must be finite and >= 0, got " + std::to_string(t.kappa));
        }
        if (t.qubit < 1) {
            throw std::invalid_argument("NoiseSpec: qubit index must be >= 1, got " + std::to_string(t.qubit));
        }
        if (!seen.insert({t.qubit, t.axis}).second) {
            throw std::invalid_argument(std::string("NoiseSpec: duplicate term on qubit ") + std::to_string(t.qubit) +
                                        " axis " + axis_char(t.axis));
        }
    }
}

double NoiseSpec::max_kappa() const {
    double k = 0;
    for (const auto &t : terms_) {
        k = std::max(k, t.kappa);
    }
    return k;
}

void NoiseSpec::validate_for(int n_qubits) const {
    for (const auto &t : terms_) {
        if (t.qubit > n_qubits) {
            throw std::invalid_argument("NoiseSpec: qubit " + std::to_string(t.qubit) + " outside a " +
                                        std::to_string(n_qubits) + "-qubit register");
        }
    }
}

std::string NoiseSpec::str() const {
    std::ostringstream out;
    for (size_t i = 0; i < terms_.size(); i++) {
        if (i) {
            out << ',';
        }
        out << terms_[i].qubit << axis_char(terms_[i].axis) << ':' << terms_[i].kappa;
    }
    return out.str();
}

IntegrationError::IntegrationError(long step, const std::string &what)
    : std::runtime_error("evolve_numeric: step " + std::to_string(step) + ": " + what), step_(step) {}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    if (!m.is_square()) {
        throw std::invalid_argument("DensityMatrix: matrix " + m.shape() + " is not square");
    }
    int n = qubit_count_for_dim(m.rows());
    if (!is_hermitian(m, kHermitianTol)) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    Complex tr = trace(m);
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " differs from 1");
    }
    double lo = hermitian_eigenvalues(m).front();
    if (lo < -kEigenTol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(lo));
    }
    return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    return DensityMatrix(psi.n_qubits(), psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    size_t dim = size_t{1} << n_qubits;
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return DensityMatrix(n_qubits, std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
    return hermitian_eigenvalues(matrix_).front();
}

ComplexMatrix lindblad_rhs(const ComplexMatrix &rho, const NoiseSpec &noise) {
    if (!rho.is_square()) {
        throw std::invalid_argument("lindblad_rhs: matrix " + rho.shape() + " is not square");
    }
    int n = qubit_count_for_dim(rho.rows());
    noise.validate_for(n);
    ComplexMatrix out = ComplexMatrix::zeros_like(rho);
    rhs_into(rho, noise, n, out);
    return out;
}

ComplexMatrix lindblad_rhs(const DensityMatrix &rho, const NoiseSpec &noise) {
    return lindblad_rhs(rho.matrix(), noise);
}

double default_dt_max(const NoiseSpec &noise) {
    double k = noise.max_kappa();
    return k > 0 ? 1e-3 / k : 1e-3;
}

DensityMatrix evolve_numeric(const DensityMatrix &rho0, const NoiseSpec &noise, double t, double dt_max) {
    if (!(t >= 0) || !std::isfinite(t)) {
        throw std::invalid_argument("evolve_numeric: t must be finite and >= 0");
    }
    if (!(dt_max > 0)) {
        throw std::invalid_argument("evolve_numeric: dt_max must be > 0");
    }
    int n = rho0.n_qubits();
    noise.validate_for(n);
    if (t == 0) {
        return rho0;
    }

    long steps = step_count(t, dt_max);
    double h = t / static_cast<double>(steps);
    ComplexMatrix rho = rho0.matrix();
    ComplexMatrix k = ComplexMatrix::zeros_like(rho);
    ComplexMatrix acc = ComplexMatrix::zeros_like(rho);
    ComplexMatrix stage = ComplexMatrix::zeros_like(rho);

    for (long step = 1; step <= steps; step++) {
        rhs_into(rho, noise, n, k);
        acc = k;
        stage = rho;
        stage.add_scaled(k, h / 2);

        rhs_into(stage, noise, n, k);
        acc.add_scaled(k, 2.0);
        stage = rho;
        stage.add_scaled(k, h / 2);

        rhs_into(stage, noise, n, k);
        acc.add_scaled(k, 2.0);
        stage = rho;
        stage.add_scaled(k, h);

        rhs_into(stage, noise, n, k);
        acc += k;
        rho.add_scaled(acc, h / 6);
        symmetrize(rho);

        double drift = std::abs(trace(rho) - 1.0);
        if (drift > kStepTol) {
            throw IntegrationError(step, "trace drifted by " + std::to_string(drift));
        }
        // A Cholesky attempt is far cheaper than a full eigensolve and
        // answers the only question asked here.
        if (!is_positive_with_shift(rho, kStepTol)) {
            throw IntegrationError(step, "state has an eigenvalue below -1e-6");
        }
    }
    return DensityMatrix::from_matrix(std::move(rho));
}

std::vector<DensityMatrix> evolve_numeric_grid(const DensityMatrix &rho0, const NoiseSpec &noise,
                                               std::span<const double> times, double dt_max) {
    std::vector<DensityMatrix> out;
    out.reserve(times.size());
    DensityMatrix current = rho0;
    double now = 0;
    for (double t : times) {
        if (!(t >= now)) {
            throw std::invalid_argument("evolve_numeric_grid: times must be ascending and >= 0");
        }
        current = evolve_numeric(current, noise, t - now, dt_max);
        now = t;
        out.push_back(current);
    }
    return out;
}

}  // namespace ghz
