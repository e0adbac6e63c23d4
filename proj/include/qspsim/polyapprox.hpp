// polyapprox.hpp — target polynomials in the Chebyshev basis: truncated
// Jacobi-Anger cosine/sine series, the erf-based sign polynomial, the even
// extension of the complex exponential, and their error certification.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qspsim/numerics.hpp"

namespace qspsim::poly {

enum class Parity { even, odd, mixed };

struct Interval {
    double lo = -1.0, hi = 1.0;
};

// Complex coefficients in the Chebyshev-T basis with a parity tag.
// The parity tag always matches the coefficient sparsity pattern.
struct ChebyshevPolynomial {
    std::vector<cplx> coeffs;          // index k holds the T_k coefficient
    Parity parity = Parity::mixed;
    std::vector<Interval> domain_note;  // interval(s) of certified accuracy

    int degree() const { return int(coeffs.size()) - 1; }
    cplx eval(double x) const { return chebyshev_eval(coeffs, x); }

    // max |eval| over a 1001-point grid per interval of [-1,1]
    double grid_max(int points = 1001) const;
    bool qsp_admissible(int points = 1001) const { return grid_max(points) <= 1.0 + 1e-9; }

    // asserts the parity/sparsity invariant, throwing numeric_error on mismatch
    void check_parity() const;
};

struct ApproximationReport {
    std::string target_name;
    double epsilon_requested = 0.0;
    double epsilon_measured = 0.0;
    int degree = 0;
};

// Named target functions for error measurement.
struct TargetFunction {
    enum class Kind { cos, sin, exp_decay, sign, eece, complex_exp, polynomial };
    Kind kind = Kind::cos;
    double tau = 0.0;  // cos/sin/eece/complex_exp parameter
    double a = 0.0;    // exp_decay parameter
    ChebyshevPolynomial reference;  // kind == polynomial

    cplx eval(double x) const;
    std::string name() const;

    static TargetFunction cosine(double tau);
    static TargetFunction sine(double tau);
    static TargetFunction exp_decay(double a);
    static TargetFunction sign();
    static TargetFunction eece(double tau);         // cos(tau x) - i sin(tau x) sign(x)
    static TargetFunction complex_exp(double tau);  // e^{-i tau x}
    static TargetFunction polynomial(ChebyshevPolynomial p);
};

// r(tau, eps): the unique solution of (|tau|/r)^r = eps with r > |tau|,
// computed as |tau| e^{W(ln(1/eps)/|tau|)}. Requires eps in (0, 1/e).
double r_function(double tau, double eps);

// K(tau, eps) = floor(r(e|tau|/2, 5 eps/4) / 2); returns 0 at tau = 0.
int truncation_index(double tau, double eps);

// Jacobi-Anger truncations rescaled by 1/(1+eps); sup-norm error on [-1,1]
// is at most 2 eps.
ChebyshevPolynomial jacobi_anger_cos(double tau, double eps);
ChebyshevPolynomial jacobi_anger_sin(double tau, double eps);

// Degree-pinned truncations of the same series (degree even for cosine,
// odd for sine), rescaled only if the grid max exceeds 1.
ChebyshevPolynomial jacobi_anger_cos_degree(double tau, int degree);
ChebyshevPolynomial jacobi_anger_sin_degree(double tau, int degree);

// Truncated modified-Jacobi-Anger approximation of e^{-a(x+1)} on [-1,1],
// truncated at degree d_exp(a, eps).
ChebyshevPolynomial exp_decay_poly(double a, double eps);

// Odd polynomial of degree exactly gamma(eps, Delta) with
// |P - sign| <= eps outside [-Delta/2, Delta/2] and |P| <= 1 on [-1,1].
ChebyshevPolynomial sign_poly(double eps, double delta_gap);

// Degree-pinned variant: gap width fixed, erf steepness chosen to minimize
// the measured error outside the gap at the given (odd) degree.
ChebyshevPolynomial sign_poly_degree(double delta_gap, int degree);

// Even complex polynomial approximating the even extension of the complex
// exponential, built per the cos/sin/sign combination with budget splits
// eps/6, eps/6, eps/3.
ChebyshevPolynomial eece_poly(double eps, double delta_gap, double tau);

// Sup-norm of |poly - target| over a uniform grid per interval.
ApproximationReport measure_error(const ChebyshevPolynomial& p, const TargetFunction& target,
                                  const std::vector<Interval>& intervals, int grid_points,
                                  double epsilon_requested = 0.0);

// Text serialization: header "chebyshev parity=<p> degree=<d>" then one
// "k re im" line per nonzero coefficient, 17 significant digits.
std::string to_text(const ChebyshevPolynomial& p);
ChebyshevPolynomial polynomial_from_text(const std::string& text);

} // namespace qspsim::poly
