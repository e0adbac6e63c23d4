// numerics.hpp — dense complex linear algebra and special functions used
// throughout the library: Lambert-W, Bessel J/I, erf, Chebyshev evaluation
// and products, Hermitian eigendecomposition, matrix exponentials.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qspsim {

using cplx = std::complex<double>;

// Thrown when an argument is outside an operation's documented domain.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical contract (hermiticity, unitarity, convergence)
// is violated at runtime.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------ ComplexMatrix -------------------------------

// Dense row-major complex matrix. Sized for desk-scale work (dim <= 256).
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    // max over entries of |a_ij|
    double max_abs() const;
    double frobenius_norm() const;

    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-10) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Spectral norm via eigendecomposition of M^dag M.
double spectral_norm(const ComplexMatrix& m);

// ------------------------------- Statevector --------------------------------

struct Statevector {
    std::vector<cplx> amplitudes;
    std::size_t qubit_count = 0;

    Statevector() = default;
    explicit Statevector(std::size_t qubits)
        : amplitudes(std::size_t(1) << qubits), qubit_count(qubits) {}

    // computational basis state; qubit 0 is the most significant bit
    static Statevector basis_state(std::size_t qubits, std::size_t index);

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
    void normalize();
};

// y = M x
std::vector<cplx> apply_matrix(const ComplexMatrix& m, const std::vector<cplx>& x);

// --------------------------- special functions ------------------------------

// Principal branch of the Lambert-W function for x >= 0.
// Halley iteration seeded from a log-based asymptotic, converged to 1e-14.
double lambert_w(double x);

// Bessel function of the first kind J_n(x), n >= 0, via Miller backward
// recurrence. Absolute accuracy ~1e-13 for |x| <= 100, n <= 200.
double bessel_j(int n, double x);

// All of J_0..J_nmax at once (shares one backward recurrence).
std::vector<double> bessel_j_array(int nmax, double x);

// Modified Bessel function I_n(x), x >= 0.
double bessel_i(int n, double x);

// e^{-x} I_n(x) for n = 0..nmax; safe for large x.
std::vector<double> bessel_i_scaled_array(int nmax, double x);

// Error function to ~1e-12 absolute accuracy (confluent series for small
// arguments, continued fraction beyond).
double erf(double x);

// ------------------------------- Chebyshev ----------------------------------

// Clenshaw evaluation of sum_k c_k T_k(x) for |x| <= 1.
cplx chebyshev_eval(const std::vector<cplx>& coeffs, double x);

// Coefficients of the product, using T_m T_n = (T_{m+n} + T_{|m-n|}) / 2.
std::vector<cplx> chebyshev_multiply(const std::vector<cplx>& a, const std::vector<cplx>& b);

// ---------------------------- eigendecomposition ----------------------------

struct EigResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // unitary, columns are eigenvectors
};

// Cyclic complex Jacobi eigendecomposition of a Hermitian matrix.
// Deterministic: identical input bits give identical output bits.
EigResult hermitian_eig(const ComplexMatrix& m);

// exp(-i H t) = sum_k e^{-i lambda_k t} |k><k|
ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t);

// sqrt(I - H^2/alpha^2) via eigendecomposition. Requires alpha >= ||H||;
// eigenvalues of I - H^2/alpha^2 in [-1e-12, 0) are clamped to 0.
ComplexMatrix hermitian_sqrt_complement(const ComplexMatrix& h, double alpha);

} // namespace qspsim
