#include "qspsim/encoding.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qspsim::enc {

ComplexMatrix pauli_matrix(char op) {
    ComplexMatrix m(2, 2);
    switch (op) {
        case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
        case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 'Y': m(0, 1) = cplx(0.0, -1.0); m(1, 0) = cplx(0.0, 1.0); break;
        case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        default: throw domain_error(std::string("unknown Pauli letter '") + op + "'");
    }
    return m;
}

ComplexMatrix pauli_sum_to_matrix(const PauliSum& p) {
    const std::size_t dim = std::size_t(1) << p.qubit_count;
    ComplexMatrix out(dim, dim);
    for (const auto& term : p.terms) {
        if (term.word.size() != p.qubit_count)
            throw domain_error("pauli term length does not match qubit count");
        ComplexMatrix m(1, 1);
        m(0, 0) = 1.0;
        for (char ch : term.word) m = kron(m, pauli_matrix(ch));
        m *= cplx(term.coefficient);
        out += m;
    }
    return out;
}

namespace {

void add_term(PauliSum& p, double coeff, std::string word) {
    if (coeff == 0.0) return;  // canonical form drops zero terms
    p.terms.push_back({coeff, std::move(word)});
}

} // namespace

PauliSum heisenberg_hamiltonian(std::size_t sites, const std::vector<BondCoupling>& bonds,
                                const std::vector<double>& fields) {
    if (sites < 2) throw domain_error("heisenberg_hamiltonian: need at least 2 sites");
    if (bonds.size() != sites - 1)
        throw domain_error("heisenberg_hamiltonian: need one coupling per bond");
    if (fields.size() != sites)
        throw domain_error("heisenberg_hamiltonian: need one field value per site");
    PauliSum p;
    p.qubit_count = sites;
    std::string id(sites, 'I');
    for (std::size_t j = 0; j < sites; ++j) {
        std::string w = id;
        w[j] = 'Z';
        add_term(p, fields[j], w);
    }
    for (std::size_t j = 0; j + 1 < sites; ++j) {
        std::string wx = id, wy = id, wz = id;
        wx[j] = wx[j + 1] = 'X';
        wy[j] = wy[j + 1] = 'Y';
        wz[j] = wz[j + 1] = 'Z';
        add_term(p, bonds[j].gx, wx);
        add_term(p, bonds[j].gy, wy);
        add_term(p, bonds[j].gz, wz);
    }
    return p;
}

PauliSum heisenberg_hamiltonian(std::size_t sites, const BondCoupling& g,
                                const std::vector<double>& fields) {
    return heisenberg_hamiltonian(sites, std::vector<BondCoupling>(sites - 1, g), fields);
}

PauliSum parse_pauli_sum(const std::string& text) {
    std::istringstream in(text);
    PauliSum p;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string::size_type hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank
        double coeff = 0.0;
        std::string word;
        try {
            if (first == "+" || first == "-") {
                std::string mag;
                if (!(ls >> mag >> word)) throw parse_error("expected '<sign> <value> <word>'", line_no);
                std::size_t used = 0;
                coeff = std::stod(mag, &used);
                if (used != mag.size()) throw parse_error("bad coefficient '" + mag + "'", line_no);
                if (first == "-") coeff = -coeff;
            } else {
                std::size_t used = 0;
                coeff = std::stod(first, &used);
                if (used != first.size())
                    throw parse_error("bad coefficient '" + first + "'", line_no);
                if (!(ls >> word)) throw parse_error("missing Pauli word", line_no);
            }
        } catch (const std::invalid_argument&) {
            throw parse_error("bad coefficient '" + first + "'", line_no);
        }
        std::string extra;
        if (ls >> extra) throw parse_error("trailing content '" + extra + "'", line_no);
        for (char c : word)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw parse_error(std::string("bad Pauli letter '") + c + "'", line_no);
        if (p.terms.empty() && p.qubit_count == 0) {
            p.qubit_count = word.size();
        } else if (word.size() != p.qubit_count) {
            throw parse_error("inconsistent Pauli word length", line_no);
        }
        p.terms.push_back({coeff, word});
    }
    if (p.terms.empty()) throw parse_error("empty Pauli sum", line_no);
    return p;
}

PauliSum load_pauli_sum(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw domain_error("cannot open Pauli-sum file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_pauli_sum(buf.str());
}

// ------------------------------ block encodings -----------------------------

BlockEncoding trivial_encoding(const ComplexMatrix& unitary) {
    if (!unitary.is_unitary(1e-10)) throw numeric_error("trivial_encoding: matrix not unitary");
    std::size_t n = 0;
    while ((std::size_t(1) << n) < unitary.rows()) ++n;
    if ((std::size_t(1) << n) != unitary.rows())
        throw domain_error("trivial_encoding: dimension not a power of two");
    BlockEncoding e;
    e.unitary = unitary;
    e.system_qubits = n;
    e.ancilla_qubits = 0;
    e.signal_state = 0;
    e.scale_alpha = 1.0;
    return e;
}

BlockEncoding dilation_encoding(const ComplexMatrix& h, double alpha) {
    if (h.rows() != h.cols()) throw domain_error("dilation_encoding: matrix not square");
    ComplexMatrix root = hermitian_sqrt_complement(h, alpha);  // throws if alpha < ||H||
    const std::size_t n = h.rows();
    ComplexMatrix u(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            cplx ha = h(r, c) / alpha;
            u(r, c) = ha;
            u(r, n + c) = root(r, c);
            u(n + r, c) = root(r, c);
            u(n + r, n + c) = -ha;
        }
    std::size_t sys = 0;
    while ((std::size_t(1) << sys) < n) ++sys;
    if ((std::size_t(1) << sys) != n) throw domain_error("dilation_encoding: dim not power of two");
    BlockEncoding e;
    e.unitary = std::move(u);
    e.system_qubits = sys;
    e.ancilla_qubits = 1;
    e.signal_state = 0;
    e.scale_alpha = alpha;
    return e;
}

namespace {

// Lift an operator acting on (outer ancillas x system) to one acting on
// (outer ancillas x inserted register x system).
ComplexMatrix insert_identity(const ComplexMatrix& op, std::size_t outer_dim,
                              std::size_t inserted_dim, std::size_t inner_dim) {
    ComplexMatrix out(op.rows() * inserted_dim, op.cols() * inserted_dim);
    for (std::size_t ao = 0; ao < outer_dim; ++ao)
        for (std::size_t bo = 0; bo < outer_dim; ++bo)
            for (std::size_t m = 0; m < inserted_dim; ++m)
                for (std::size_t ai = 0; ai < inner_dim; ++ai)
                    for (std::size_t bi = 0; bi < inner_dim; ++bi) {
                        cplx v = op(ao * inner_dim + ai, bo * inner_dim + bi);
                        if (v == cplx(0.0)) continue;
                        out((ao * inserted_dim + m) * inner_dim + ai,
                            (bo * inserted_dim + m) * inner_dim + bi) = v;
                    }
    return out;
}

} // namespace

BlockEncoding product_encoding(const BlockEncoding& enc_a, const BlockEncoding& enc_b) {
    if (enc_a.system_qubits != enc_b.system_qubits)
        throw domain_error("product_encoding: system size mismatch");
    if (enc_a.signal_state != 0 || enc_b.signal_state != 0)
        throw domain_error("product_encoding: nonzero signal states unsupported");
    const std::size_t sys = enc_a.system_dim();
    const std::size_t dim_a = std::size_t(1) << enc_a.ancilla_qubits;
    const std::size_t dim_b = std::size_t(1) << enc_b.ancilla_qubits;
    // result register order: (B ancillas, A ancillas, system)
    ComplexMatrix va = kron(ComplexMatrix::identity(dim_b), enc_a.unitary);
    ComplexMatrix vb = insert_identity(enc_b.unitary, dim_b, dim_a, sys);
    BlockEncoding e;
    e.unitary = va * vb;
    e.system_qubits = enc_a.system_qubits;
    e.ancilla_qubits = enc_a.ancilla_qubits + enc_b.ancilla_qubits;
    e.signal_state = 0;
    e.scale_alpha = enc_a.scale_alpha;
    return e;
}

BlockEncoding scale_encoding(const BlockEncoding& e, double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) throw domain_error("scale_encoding: beta outside (0,1]");
    double s = std::sqrt(std::max(0.0, 1.0 - beta * beta));
    ComplexMatrix rx(2, 2);
    rx(0, 0) = beta;
    rx(0, 1) = cplx(0.0, -s);
    rx(1, 0) = cplx(0.0, -s);
    rx(1, 1) = beta;
    BlockEncoding out;
    out.unitary = kron(rx, e.unitary);
    out.system_qubits = e.system_qubits;
    out.ancilla_qubits = e.ancilla_qubits + 1;
    out.signal_state = e.signal_state;  // new ancilla outermost, signal bit 0
    out.scale_alpha = e.scale_alpha;
    out.beta = beta;
    return out;
}

BlockEncoding pretransform_encoding(const BlockEncoding& e, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw domain_error("pretransform_encoding: beta outside (0,1)");
    BlockEncoding scaled = scale_encoding(e, beta);
    const std::size_t d = scaled.total_dim();
    ComplexMatrix cu(2 * d, 2 * d);  // |0><0| x I + |1><1| x U
    for (std::size_t i = 0; i < d; ++i) cu(i, i) = 1.0;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) cu(d + r, d + c) = scaled.unitary(r, c);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix had(2, 2);
    had(0, 0) = had(0, 1) = had(1, 0) = inv_sqrt2;
    had(1, 1) = -inv_sqrt2;
    ComplexMatrix hfull = kron(had, ComplexMatrix::identity(d));
    BlockEncoding out;
    out.unitary = hfull * cu * hfull;
    out.system_qubits = e.system_qubits;
    out.ancilla_qubits = scaled.ancilla_qubits + 1;
    out.signal_state = 0;
    out.scale_alpha = e.scale_alpha;
    out.beta = beta;
    return out;
}

ComplexMatrix extract_block(const BlockEncoding& e) {
    const std::size_t n = e.system_dim();
    const std::size_t off = e.signal_state * n;
    ComplexMatrix b(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) b(r, c) = e.unitary(off + r, off + c);
    return b;
}

} // namespace qspsim::enc
