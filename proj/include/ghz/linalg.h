#ifndef GHZ_LINALG_H
#define GHZ_LINALG_H

#include <cassert>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ghz {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Sized for registers of up to 8 qubits, so
/// there is no blocking or sparsity; every operation is a plain loop nest.
class ComplexMatrix {
   public:
    /// Zero matrix. Both dimensions must be positive.
    ComplexMatrix(size_t rows, size_t cols);

    static ComplexMatrix identity(size_t n);
    static ComplexMatrix zeros_like(const ComplexMatrix &other);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    /// Column vector holding the given entries.
    static ComplexMatrix column(std::span<const Complex> entries);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::string shape() const;

    Complex &operator()(size_t r, size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    const Complex &operator()(size_t r, size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<Complex> data() { return data_; }
    std::span<const Complex> data() const { return data_; }

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    /// In-place this += scale * other.
    void add_scaled(const ComplexMatrix &other, Complex scale);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t rows_;
    size_t cols_;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

/// Matrix product. Throws std::invalid_argument when a.cols() != b.rows().
ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);

/// Kronecker product; the index of `a` varies slowest.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix &a);

/// Sum of the diagonal. Throws std::invalid_argument for non-square input.
Complex trace(const ComplexMatrix &a);

/// Reduced operator after tracing out `traced_qubits` (1-based, qubit 1 is the
/// most significant tensor factor). `rho` must be 2^n_total square.
ComplexMatrix partial_trace(const ComplexMatrix &rho, int n_total, std::span<const int> traced_qubits);
ComplexMatrix partial_trace(const ComplexMatrix &rho, int n_total, std::initializer_list<int> traced_qubits);

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
double max_abs(const ComplexMatrix &a);
bool is_hermitian(const ComplexMatrix &a, double tol);

/// (a + a^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix &a);

/// Eigenvalues of a Hermitian matrix in ascending order, via cyclic complex
/// Jacobi rotations. Only the Hermitian part of `a` is used.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a);

/// True when a + shift*I admits a Cholesky factorization, i.e. no eigenvalue
/// of the Hermitian matrix `a` lies below -shift (up to roundoff).
bool is_positive_with_shift(const ComplexMatrix &a, double shift);

/// Number of qubits for a 2^n dimension; throws if dim is not a power of two.
int qubit_count_for_dim(size_t dim);

/// Normalized ket of dimension 2^n.
class StateVector {
   public:
    /// Throws std::invalid_argument unless the norm is 1 within 1e-12 and
    /// the dimension is a power of two.
    explicit StateVector(std::vector<Complex> amplitudes);

    static StateVector basis(int n_qubits, size_t index);

    size_t dim() const { return amplitudes_.size(); }
    int n_qubits() const { return qubit_count_for_dim(amplitudes_.size()); }
    const Complex &operator[](size_t i) const { return amplitudes_[i]; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    double norm() const;

    /// |psi><psi|
    ComplexMatrix projector() const;
    ComplexMatrix as_column() const;

    /// <this|op|this>
    Complex expectation(const ComplexMatrix &op) const;

   private:
    std::vector<Complex> amplitudes_;
};

StateVector kron(const StateVector &a, const StateVector &b);

/// op * psi. The caller is responsible for `op` being norm preserving.
StateVector apply(const ComplexMatrix &op, const StateVector &psi);

}  // namespace ghz

#endif
