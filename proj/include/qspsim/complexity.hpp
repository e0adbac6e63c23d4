// complexity.hpp — closed-form query-complexity calculators for the four
// simulation algorithms and the Trotterized variant, plus sweep tables.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qspsim::cplx_count {

struct ComplexityReport {
    std::string algorithm;
    double t = 0.0, alpha = 0.0, beta = 0.0, epsilon = 0.0, delta = 0.0;
    long long queries = 0;
};

// Degree of the sign-function polynomial: the larger of two Lambert-W
// branches, doubled and made odd. Scales as (1/Delta) ln(1/eps).
long long gamma_degree(double eps, double delta_gap);

// 4 * floor(r(e/2 alpha|t|, 5 eps/16) / 2) + 1, always of the form 4m+1.
long long n_lcu(double eps, double t, double alpha);

// gamma(delta/2, 1-eps) * n_lcu(eps)
long long n_aa(double eps, double delta, double t, double alpha);

// 3 * n_lcu(2 eps / 5)
long long n_roaa(double eps, double t, double alpha);

// 2 * floor(r(e alpha|t|/beta, 5 eps/24) / 2) + gamma(eps/3, 1-beta) + 1, even.
long long n_os(double eps, double beta, double t, double alpha);

// L * n_os(eps/L, beta, t/L, alpha); equals n_os at L = 1.
long long n_os_trotter(double eps, double delta, double t, long long steps,
                       double alpha, double beta);

struct SweepSpec {
    std::vector<double> t_values;        // t sweep (epsilon fixed)
    std::vector<double> epsilon_values;  // epsilon sweep (t fixed)
    double alpha = 5.0;
    double beta = 0.5;
    double epsilon_fixed = 0.02;
    double t_fixed = 5.0;
    // delta = 2 epsilon throughout, matching the comparison convention
};

// One row per (algorithm, sweep point); deterministic order: algorithm
// block (lcu, aa, roaa, os), then sweep variable ascending.
std::vector<ComplexityReport> complexity_table(const SweepSpec& spec);

} // namespace qspsim::cplx_count
