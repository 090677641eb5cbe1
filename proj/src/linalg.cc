#include "ghz/linalg.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghz {

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive, got " + shape());
    }
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zeros_like(const ComplexMatrix &other) {
    return ComplexMatrix(other.rows(), other.cols());
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    size_t n_rows = rows.size();
    size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(n_rows, n_cols);
    size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != n_cols) {
            throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows");
        }
        size_t c = 0;
        for (const auto &v : row) {
            m(r, c++) = v;
        }
        r++;
    }
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> entries) {
    ComplexMatrix m(entries.size(), 1);
    std::copy(entries.begin(), entries.end(), m.data_.begin());
    return m;
}

std::string ComplexMatrix::shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    add_scaled(other, 1.0);
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    add_scaled(other, -1.0);
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &v : data_) {
        v *= scale;
    }
    return *this;
}

void ComplexMatrix::add_scaled(const ComplexMatrix &other, Complex scale) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch " + shape() + " vs " + other.shape());
    }
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] += scale * other.data_[i];
    }
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix a) {
    a *= scale;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: cannot multiply " + a.shape() + " by " + b.shape());
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t k = 0; k < a.cols(); k++) {
            Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (size_t j = 0; j < b.cols(); j++) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ar++) {
        for (size_t ac = 0; ac < a.cols(); ac++) {
            Complex v = a(ar, ac);
            for (size_t br = 0; br < b.rows(); br++) {
                for (size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

Complex trace(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw std::invalid_argument("trace: matrix is not square (" + a.shape() + ")");
    }
    Complex sum = 0;
    for (size_t i = 0; i < a.rows(); i++) {
        sum += a(i, i);
    }
    return sum;
}

int qubit_count_for_dim(size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    int n = 0;
    while ((size_t{1} << n) < dim) {
        n++;
    }
    return n;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, int n_total, std::span<const int> traced_qubits) {
    if (n_total < 1 || n_total > 16) {
        throw std::invalid_argument("partial_trace: n_total out of range: " + std::to_string(n_total));
    }
    size_t dim = size_t{1} << n_total;
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument(
            "partial_trace: expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " operator, got " +
            rho.shape());
    }
    std::vector<bool> traced(n_total + 1, false);
    for (int q : traced_qubits) {
        if (q < 1 || q > n_total) {
            throw std::invalid_argument(
                "partial_trace: qubit index " + std::to_string(q) + " outside 1.." + std::to_string(n_total));
        }
        if (traced[q]) {
            throw std::invalid_argument("partial_trace: qubit " + std::to_string(q) + " listed twice");
        }
        traced[q] = true;
    }

    // Qubit q sits at bit (n_total - q) of the basis index.
    std::vector<int> kept_bits;
    std::vector<int> traced_bits;
    for (int q = 1; q <= n_total; q++) {
        (traced[q] ? traced_bits : kept_bits).push_back(n_total - q);
    }
    auto spread = [](const std::vector<int> &bits) {
        // bits are listed most significant first; sub-index bit 0 maps to bits.back().
        std::vector<size_t> offsets(size_t{1} << bits.size(), 0);
        for (size_t idx = 0; idx < offsets.size(); idx++) {
            size_t full = 0;
            for (size_t k = 0; k < bits.size(); k++) {
                if ((idx >> (bits.size() - 1 - k)) & 1) {
                    full |= size_t{1} << bits[k];
                }
            }
            offsets[idx] = full;
        }
        return offsets;
    };
    auto kept = spread(kept_bits);
    auto summed = spread(traced_bits);

    ComplexMatrix out(kept.size(), kept.size());
    for (size_t i = 0; i < kept.size(); i++) {
        for (size_t j = 0; j < kept.size(); j++) {
            Complex acc = 0;
            for (size_t t : summed) {
                acc += rho(kept[i] | t, kept[j] | t);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, int n_total, std::initializer_list<int> traced_qubits) {
    return partial_trace(rho, n_total, std::span<const int>(traced_qubits.begin(), traced_qubits.size()));
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch " + a.shape() + " vs " + b.shape());
    }
    double m = 0;
    for (size_t i = 0; i < a.data().size(); i++) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

double max_abs(const ComplexMatrix &a) {
    double m = 0;
    for (const auto &v : a.data()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool is_hermitian(const ComplexMatrix &a, double tol) {
    if (!a.is_square()) {
        return false;
    }
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = r; c < a.cols(); c++) {
            if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

ComplexMatrix hermitian_part(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw std::invalid_argument("hermitian_part: matrix is not square (" + a.shape() + ")");
    }
    ComplexMatrix out(a.rows(), a.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            out(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a) {
    ComplexMatrix m = hermitian_part(a);
    const size_t n = m.rows();

    double total = 0;
    for (const auto &v : m.data()) {
        total += std::norm(v);
    }
    auto off_diagonal = [&] {
        double s = 0;
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                s += 2 * std::norm(m(p, q));
            }
        }
        return s;
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal() > 1e-28 * std::max(total, 1e-300); sweep++) {
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double r = std::abs(m(p, q));
                if (r < 1e-300) {
                    continue;
                }
                // Phase-rotate so the pivot is real, then apply a real Jacobi rotation.
                Complex phase = std::conj(m(p, q)) / r;  // e^{-i alpha}
                double app = m(p, p).real();
                double aqq = m(q, q).real();
                double tau = (aqq - app) / (2 * r);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;

                for (size_t k = 0; k < n; k++) {
                    Complex kp = m(k, p);
                    Complex kq = m(k, q);
                    m(k, p) = c * kp - s * phase * kq;
                    m(k, q) = s * kp + c * phase * kq;
                }
                Complex conj_phase = std::conj(phase);
                for (size_t k = 0; k < n; k++) {
                    Complex pk = m(p, k);
                    Complex qk = m(q, k);
                    m(p, k) = c * pk - s * conj_phase * qk;
                    m(q, k) = s * pk + c * conj_phase * qk;
                }
                m(p, q) = 0;
                m(q, p) = 0;
                m(p, p) = m(p, p).real();
                m(q, q) = m(q, q).real();
            }
        }
    }

    std::vector<double> eig(n);
    for (size_t i = 0; i < n; i++) {
        eig[i] = m(i, i).real();
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

bool is_positive_with_shift(const ComplexMatrix &a, double shift) {
    if (!a.is_square()) {
        throw std::invalid_argument("is_positive_with_shift: matrix is not square (" + a.shape() + ")");
    }
    const size_t n = a.rows();
    ComplexMatrix l(n, n);
    for (size_t j = 0; j < n; j++) {
        double d = a(j, j).real() + shift;
        for (size_t k = 0; k < j; k++) {
            d -= std::norm(l(j, k));
        }
        if (!(d > 0)) {
            return false;
        }
        double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (size_t i = j + 1; i < n; i++) {
            Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            for (size_t k = 0; k < j; k++) {
                v -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = v / ljj;
        }
    }
    return true;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    qubit_count_for_dim(amplitudes_.size());
    if (std::abs(norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("StateVector: norm " + std::to_string(norm()) + " differs from 1");
    }
}

StateVector StateVector::basis(int n_qubits, size_t index) {
    size_t dim = size_t{1} << n_qubits;
    if (index >= dim) {
        throw std::invalid_argument("StateVector::basis: index out of range");
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::norm() const {
    double s = 0;
    for (const auto &v : amplitudes_) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

ComplexMatrix StateVector::projector() const {
    ComplexMatrix out(dim(), dim());
    for (size_t r = 0; r < dim(); r++) {
        for (size_t c = 0; c < dim(); c++) {
            out(r, c) = amplitudes_[r] * std::conj(amplitudes_[c]);
        }
    }
    return out;
}

ComplexMatrix StateVector::as_column() const {
    return ComplexMatrix::column(amplitudes_);
}

Complex StateVector::expectation(const ComplexMatrix &op) const {
    if (op.rows() != dim() || op.cols() != dim()) {
        throw std::invalid_argument(
            "StateVector::expectation: operator " + op.shape() + " does not act on dimension " +
            std::to_string(dim()));
    }
    Complex acc = 0;
    for (size_t r = 0; r < dim(); r++) {
        Complex row = 0;
        for (size_t c = 0; c < dim(); c++) {
            row += op(r, c) * amplitudes_[c];
        }
        acc += std::conj(amplitudes_[r]) * row;
    }
    return acc;
}

StateVector kron(const StateVector &a, const StateVector &b) {
    std::vector<Complex> amps(a.dim() * b.dim());
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < b.dim(); j++) {
            amps[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return StateVector(std::move(amps));
}

StateVector apply(const ComplexMatrix &op, const StateVector &psi) {
    if (op.cols() != psi.dim() || op.rows() != psi.dim()) {
        throw std::invalid_argument(
            "apply: operator " + op.shape() + " does not act on dimension " + std::to_string(psi.dim()));
    }
    std::vector<Complex> out(psi.dim());
    for (size_t r = 0; r < psi.dim(); r++) {
        for (size_t c = 0; c < psi.dim(); c++) {
            out[r] += op(r, c) * psi[c];
        }
    }
    return StateVector(std::move(out));
}

}  // namespace ghz
