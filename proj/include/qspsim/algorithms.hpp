// algorithms.hpp — the four Hamiltonian-simulation algorithms (QSP-LCU, +AA,
// +ROAA, coherent one-shot), the Trotterized time-dependent driver, exact
// oracles, and observable evaluation.

#pragma once

#include <functional>
#include <vector>

#include "qspsim/encoding.hpp"
#include "qspsim/numerics.hpp"
#include "qspsim/qsp_engine.hpp"

namespace qspsim::alg {

struct SimulationOutcome {
    Statevector final_state;       // post-selected system state, renormalized
    double success_probability = 0.0;
    ComplexMatrix block_operator;  // realized approximation (see operator_error)
    double operator_error = 0.0;   // spectral distance to the exact reference
    long long queries_used = 0;
    double epsilon_declared = 0.0; // realized function-level error bound
    double global_phase = 0.0;     // phase removed before comparing (one-shot)
};

// LCU pairing of the cosine and (-i times) sine QET sequences over one
// Hamiltonian block encoding. Block of the result is (cos - i sin)(tau x)/2
// evaluated on H/alpha, i.e. an approximation of e^{-iHt}/2.
enc::BlockEncoding lcu_unitary(const enc::BlockEncoding& e, const qsp::PhaseVector& phases_cos,
                               const qsp::PhaseVector& phases_sin);

// Conventional QSP-LCU simulation. epsilon_budget <= 0 skips the budget
// check; a positive budget throws numeric_error when the realized
// approximation error exceeds it.
std::pair<enc::BlockEncoding, SimulationOutcome> qsp_lcu(const enc::BlockEncoding& e, double t,
                                                         const qsp::PhaseVector& phases_cos,
                                                         const qsp::PhaseVector& phases_sin,
                                                         const Statevector& psi0,
                                                         double epsilon_budget = 0.0);

// QSP-LCU + conventional amplitude amplification via QSVT with an odd
// sign-polynomial phase vector.
SimulationOutcome qsp_lcu_aa(const enc::BlockEncoding& e, double t,
                             const qsp::PhaseVector& phases_cos,
                             const qsp::PhaseVector& phases_sin,
                             const qsp::PhaseVector& phases_sign, const Statevector& psi0);

// QSP-LCU + robust oblivious amplitude amplification, A = -W R W^dag R W.
SimulationOutcome qsp_lcu_roaa(const enc::BlockEncoding& e, double t,
                               const qsp::PhaseVector& phases_cos,
                               const qsp::PhaseVector& phases_sin, const Statevector& psi0);

// Coherent one-shot simulation: pre-transformation then a single QSVT with
// phases approximating e^{-i tau x} on the compressed spectral interval,
// tau = 2 t alpha / beta. The realized block equals e^{-i t alpha/beta} e^{-iHt}
// up to the approximation error; operator_error removes that global phase.
SimulationOutcome one_shot(const enc::BlockEncoding& e, double t, double beta,
                           const qsp::PhaseVector& phases_eece, const Statevector& psi0);

// ----------------------------- time dependence ------------------------------

struct TimeDependentSpec {
    std::function<enc::PauliSum(double)> hamiltonian_at;
    double total_time = 0.0;
    long long steps = 1;

    double step_size() const { return total_time / double(steps); }
};

enum class TrotterAlgorithm { roaa, one_shot };

struct TrotterConfig {
    TrotterAlgorithm algorithm = TrotterAlgorithm::roaa;
    double alpha = 1.0;
    double beta = 0.5;                 // one-shot only
    qsp::PhaseVector phases_cos;       // roaa
    qsp::PhaseVector phases_sin;       // roaa
    qsp::PhaseVector phases_eece;      // one-shot
    bool postselect_each_step = false; // diagnostic; bookkeeping is identical
};

struct TrotterStep {
    SimulationOutcome outcome;     // per-step quantities
    double cumulative_success = 1.0;
    Statevector cumulative_state;  // normalized chained state after this step
};

// Applies the per-step block operators in sequence (coherent chaining); the
// same phase vectors are reused at every step. Cumulative success is the
// product of per-step success probabilities.
std::vector<TrotterStep> trotter_evolve(const TimeDependentSpec& spec, const TrotterConfig& cfg,
                                        const Statevector& psi0);

// RK4 integration of i dU/dt = H(t) U from U(0) = I, verified by step
// doubling to 1e-8 and re-unitarized by polar projection.
ComplexMatrix exact_evolution_td(const TimeDependentSpec& spec, long long substeps);

// --------------------------------- plumbing ---------------------------------

// success = || <signal| U (|signal> tensor psi0) ||^2, state renormalized
std::pair<Statevector, double> apply_and_postselect(const enc::BlockEncoding& e,
                                                    const Statevector& psi0);

// <psi| sigma^z_site |psi>; site is 0-based, qubit 0 most significant
double expectation_sigma_z(const Statevector& psi, std::size_t site);

// Total occupation of two orbitals under (I - Z)/2 per orbital.
double occupation_number(const Statevector& psi, std::size_t orbital_a, std::size_t orbital_b);

// min over phi of || A e^{i phi} - B ||_2, phases seeded at the
// Frobenius-optimal rotation and refined by golden-section search.
std::pair<double, double> phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace qspsim::alg
