// qsp_engine.hpp — QSP sequence evaluation, phase synthesis by quasi-Newton
// least squares, and the lifts from phases to matrices via QET and QSVT.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qspsim/encoding.hpp"
#include "qspsim/numerics.hpp"
#include "qspsim/polyapprox.hpp"

namespace qspsim::qsp {

enum class Basis { computational, hadamard };

enum class Convention { wx_signal, reflection };

// Ordered QSP phases (phi_0 .. phi_d), stored canonically in (-pi, pi].
struct PhaseVector {
    std::vector<double> phases;
    Convention convention = Convention::wx_signal;

    PhaseVector() = default;
    PhaseVector(std::vector<double> p, Convention c = Convention::wx_signal);

    int degree() const { return int(phases.size()) - 1; }
};

struct SynthesisResult {
    PhaseVector phases;
    double achieved_error = 0.0;  // sup |block - target| on the synthesis grid
    long long iterations = 0;
    bool converged = false;
};

// W(x): the Wx-convention signal operator, <0|W|0> = x.
ComplexMatrix signal_operator(double x);

// e^{i phi_0 Z} prod_k W(x) e^{i phi_k Z}
ComplexMatrix qsp_unitary(const PhaseVector& phases, double x);

// computational: <0|U|0>; hadamard: <+|U|+> = Re P + i sqrt(1-x^2) Re Q
cplx block_value(const PhaseVector& phases, double x, Basis basis);

// Quasi-Newton least-squares phase synthesis against a polynomial target on
// d+1 Chebyshev nodes, validated on the nodes plus 201 uniform points.
// Deterministic for fixed seed; up to 8 perturbed restarts on stagnation.
SynthesisResult synthesize_phases(const poly::ChebyshevPolynomial& target, Basis basis,
                                  double tolerance, std::uint64_t seed = 0);

// Same optimizer, but fitting arbitrary complex samples of a target function
// on caller-chosen nodes (used by the drivers to fit e^{-i tau x} directly on
// a compressed spectral interval). Validation grid: the nodes plus 201
// uniform points per interval.
struct SampleTarget {
    int degree = 0;
    Basis basis = Basis::computational;
    std::vector<double> nodes;
    std::vector<cplx> values;
    std::vector<poly::Interval> validation;           // where sup-error is taken
    std::function<cplx(double)> validation_target;    // target on those intervals
    int max_restarts = 8;
    // extra residual sqrt(w) (1 - |b|^2) per node, pulling the response
    // modulus against the unit cap (post-selection probability depends on the
    // modulus only, so unit-modulus targets prefer tangential error)
    double modulus_weight = 0.0;
};
SynthesisResult synthesize_to_samples(const SampleTarget& target, double tolerance,
                                      std::uint64_t seed = 0);

// Projector-controlled phase shift e^{i phi (2 Pi - I)} on qubit_count qubits,
// with Pi projecting onto the given computational basis indices.
ComplexMatrix projector_phase(const std::vector<std::size_t>& projector_states, double phi,
                              std::size_t total_qubits);

// Quantum eigenvalue transformation: the non-alternating phased product,
// valid for Hermitian (qubitized) encoding unitaries; with hadamard basis
// the block is read in the |+><+| ancilla component.
enc::BlockEncoding qet_sequence(const enc::BlockEncoding& e, const PhaseVector& phases,
                                Basis basis = Basis::computational);

// Quantum singular value transformation: alternating U / U^dag sequence,
// valid for any block encoding. Encoded block becomes P^(SV)(A).
enc::BlockEncoding qsvt_sequence(const enc::BlockEncoding& e, const PhaseVector& phases);

// Phase-file serialization: header "qsp-phases d=<degree> convention=<tag>"
// then one radian value per line at 17 significant digits.
std::string to_text(const PhaseVector& p);
PhaseVector phases_from_text(const std::string& text);

} // namespace qspsim::qsp
