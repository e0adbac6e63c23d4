// encoding.hpp — Pauli-sum Hamiltonians and unitary block encodings: the
// single-ancilla dilation, block-encoding products, the beta rescale, and
// the spectrum-compressing pre-transformation.

#pragma once

#include <string>
#include <vector>

#include "qspsim/numerics.hpp"

namespace qspsim::enc {

// Weighted sum of Pauli strings over {I,X,Y,Z}; real coefficients keep the
// realized matrix Hermitian by construction.
struct PauliSum {
    struct Term {
        double coefficient = 0.0;
        std::string word;  // length == qubit_count, character j acts on qubit j
    };
    std::vector<Term> terms;
    std::size_t qubit_count = 0;
};

// Thrown on malformed Pauli-sum files; carries the 1-based line number.
struct parse_error : std::runtime_error {
    int line = 0;
    parse_error(const std::string& msg, int line_number)
        : std::runtime_error(msg + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
};

ComplexMatrix pauli_matrix(char op);  // 2x2 for I, X, Y, Z
ComplexMatrix pauli_sum_to_matrix(const PauliSum& p);

// Open-chain Heisenberg Hamiltonian: per-site z fields plus per-bond
// XX/YY/ZZ couplings (n-1 bonds). Zero-coefficient terms are dropped.
struct BondCoupling {
    double gx = 0.0, gy = 0.0, gz = 0.0;
};
PauliSum heisenberg_hamiltonian(std::size_t sites, const std::vector<BondCoupling>& bonds,
                                const std::vector<double>& fields);
// convenience: same coupling on every bond
PauliSum heisenberg_hamiltonian(std::size_t sites, const BondCoupling& g,
                                const std::vector<double>& fields);

// Parses the Pauli-sum text format: '#' comments, then either
// "<sign> <decimal> <word>" (sign separated, as in the shipped H2 table)
// or "<signed-decimal> <word>".
PauliSum load_pauli_sum(const std::string& path);
PauliSum parse_pauli_sum(const std::string& text);

// Unitary with a designated ancilla block that encodes an operator.
// Layout: ancillas are most significant, newest ancilla outermost, so the
// signal-state-0 block is the leading principal submatrix.
struct BlockEncoding {
    ComplexMatrix unitary;
    std::size_t system_qubits = 0;
    std::size_t ancilla_qubits = 0;
    std::size_t signal_state = 0;  // ancilla basis index carrying the block
    double scale_alpha = 1.0;      // encoded operator = H / alpha where relevant
    double beta = 0.0;             // pre-transformation parameter, 0 if unused

    std::size_t system_dim() const { return std::size_t(1) << system_qubits; }
    std::size_t total_dim() const { return std::size_t(1) << (system_qubits + ancilla_qubits); }
};

// Treat a bare unitary as a zero-ancilla encoding of itself.
BlockEncoding trivial_encoding(const ComplexMatrix& unitary);

// Single-ancilla dilation [[H/a, sqrt(I-H^2/a^2)], [sqrt(..), -H/a]];
// a Hermitian unitary. Requires alpha >= ||H||.
BlockEncoding dilation_encoding(const ComplexMatrix& h, double alpha);

// Block encoding of A B from encodings of A and B (ancillas concatenate).
BlockEncoding product_encoding(const BlockEncoding& enc_a, const BlockEncoding& enc_b);

// R_x(2 acos(beta)) tensor U: encodes beta times the previous operator.
BlockEncoding scale_encoding(const BlockEncoding& e, double beta);

// Hadamard-conjugated controlled application of the beta-rescaled encoding:
// encodes (I + beta H/alpha)/2 with two extra ancillas.
BlockEncoding pretransform_encoding(const BlockEncoding& e, double beta);

// The 2^n x 2^n sub-matrix <signal| U |signal> on the ancilla register.
ComplexMatrix extract_block(const BlockEncoding& e);

} // namespace qspsim::enc
