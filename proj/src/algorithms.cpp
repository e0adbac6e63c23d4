#include "qspsim/algorithms.hpp"

#include <cmath>

namespace qspsim::alg {

namespace {

// realized scalar response of the LCU pair: f_cos(x) - i f_sin(x)
cplx lcu_scalar(const qsp::PhaseVector& pc, const qsp::PhaseVector& ps, double x) {
    return qsp::block_value(pc, x, qsp::Basis::hadamard) -
           cplx(0.0, 1.0) * qsp::block_value(ps, x, qsp::Basis::hadamard);
}

double sup_on_grid(const std::function<double(double)>& f, double lo, double hi, int points) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        double x = lo + (hi - lo) * double(i) / double(points - 1);
        worst = std::max(worst, f(x));
    }
    return worst;
}

ComplexMatrix hamiltonian_of(const enc::BlockEncoding& e) {
    return extract_block(e) * cplx(e.scale_alpha);
}

} // namespace

enc::BlockEncoding lcu_unitary(const enc::BlockEncoding& e, const qsp::PhaseVector& phases_cos,
                               const qsp::PhaseVector& phases_sin) {
    enc::BlockEncoding vc = qsp::qet_sequence(e, phases_cos, qsp::Basis::hadamard);
    enc::BlockEncoding vs = qsp::qet_sequence(e, phases_sin, qsp::Basis::hadamard);
    const std::size_t d = vc.unitary.rows();
    // select:|0><0| x Vc + |1><1| x (-i Vs); the -i is the LCU coefficient
    ComplexMatrix sel(2 * d, 2 * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            sel(r, c) = vc.unitary(r, c);
            sel(d + r, d + c) = cplx(0.0, -1.0) * vs.unitary(r, c);
        }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix had(2, 2);
    had(0, 0) = had(0, 1) = had(1, 0) = inv_sqrt2;
    had(1, 1) = -inv_sqrt2;
    ComplexMatrix hfull = kron(had, ComplexMatrix::identity(d));
    enc::BlockEncoding out;
    out.unitary = hfull * sel * hfull;
    out.system_qubits = e.system_qubits;
    out.ancilla_qubits = e.ancilla_qubits + 1;
    out.signal_state = 0;
    out.scale_alpha = e.scale_alpha;
    return out;
}

std::pair<enc::BlockEncoding, SimulationOutcome> qsp_lcu(const enc::BlockEncoding& e, double t,
                                                         const qsp::PhaseVector& phases_cos,
                                                         const qsp::PhaseVector& phases_sin,
                                                         const Statevector& psi0,
                                                         double epsilon_budget) {
    enc::BlockEncoding w = lcu_unitary(e, phases_cos, phases_sin);
    const double tau = e.scale_alpha * t;
    SimulationOutcome out;
    out.block_operator = extract_block(w);
    out.queries_used = phases_cos.degree() + phases_sin.degree();
    out.epsilon_declared = sup_on_grid(
        [&](double x) {
            return std::abs(lcu_scalar(phases_cos, phases_sin, x) - std::exp(cplx(0.0, -tau * x)));
        },
        -1.0, 1.0, 1001);
    if (epsilon_budget > 0.0 && out.epsilon_declared > epsilon_budget)
        throw numeric_error("qsp_lcu: realized approximation error exceeds budget");
    ComplexMatrix exact = matrix_exp_hermitian(hamiltonian_of(e), t);
    out.operator_error = spectral_norm(out.block_operator - 0.5 * exact);
    auto [state, p] = apply_and_postselect(w, psi0);
    out.final_state = std::move(state);
    out.success_probability = p;
    return {std::move(w), std::move(out)};
}

SimulationOutcome qsp_lcu_aa(const enc::BlockEncoding& e, double t,
                             const qsp::PhaseVector& phases_cos,
                             const qsp::PhaseVector& phases_sin,
                             const qsp::PhaseVector& phases_sign, const Statevector& psi0) {
    if (phases_sign.degree() % 2 != 1)
        throw domain_error("qsp_lcu_aa: sign phases must have odd degree");
    enc::BlockEncoding w = lcu_unitary(e, phases_cos, phases_sin);
    enc::BlockEncoding amplified = qsp::qsvt_sequence(w, phases_sign);
    const double tau = e.scale_alpha * t;
    SimulationOutcome out;
    out.block_operator = extract_block(amplified);
    out.queries_used =
        (long long)phases_sign.degree() * (phases_cos.degree() + phases_sin.degree());
    out.epsilon_declared = sup_on_grid(
        [&](double x) {
            cplx z = lcu_scalar(phases_cos, phases_sin, x);
            double mag = std::abs(z);
            cplx unit = (mag > 1e-14) ? z / mag : cplx(1.0);
            cplx amp = qsp::block_value(phases_sign, mag / 2.0, qsp::Basis::computational) * unit;
            return std::abs(amp - std::exp(cplx(0.0, -tau * x)));
        },
        -1.0, 1.0, 1001);
    ComplexMatrix exact = matrix_exp_hermitian(hamiltonian_of(e), t);
    out.operator_error = spectral_norm(out.block_operator - exact);
    auto [state, p] = apply_and_postselect(amplified, psi0);
    out.final_state = std::move(state);
    out.success_probability = p;
    return out;
}

SimulationOutcome qsp_lcu_roaa(const enc::BlockEncoding& e, double t,
                               const qsp::PhaseVector& phases_cos,
                               const qsp::PhaseVector& phases_sin, const Statevector& psi0) {
    enc::BlockEncoding w = lcu_unitary(e, phases_cos, phases_sin);
    // A = -W R W^dag R W with R = I - 2P on the two LCU/QSP ancillas
    const std::size_t dim = w.total_dim();
    const std::size_t n = w.system_dim();
    ComplexMatrix r = ComplexMatrix::identity(dim);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = -1.0;
    ComplexMatrix wdag = w.unitary.adjoint();
    ComplexMatrix a = w.unitary * r * wdag * r * w.unitary;
    a *= cplx(-1.0);
    enc::BlockEncoding amplified = w;
    amplified.unitary = std::move(a);
    const double tau = e.scale_alpha * t;
    SimulationOutcome out;
    out.block_operator = extract_block(amplified);
    out.queries_used = 3LL * (phases_cos.degree() + phases_sin.degree());
    out.epsilon_declared = sup_on_grid(
        [&](double x) {
            cplx z = lcu_scalar(phases_cos, phases_sin, x);
            cplx amp = 1.5 * z - 0.5 * z * std::norm(z);
            return std::abs(amp - std::exp(cplx(0.0, -tau * x)));
        },
        -1.0, 1.0, 1001);
    ComplexMatrix exact = matrix_exp_hermitian(hamiltonian_of(e), t);
    out.operator_error = spectral_norm(out.block_operator - exact);
    auto [state, p] = apply_and_postselect(amplified, psi0);
    out.final_state = std::move(state);
    out.success_probability = p;
    return out;
}

SimulationOutcome one_shot(const enc::BlockEncoding& e, double t, double beta,
                           const qsp::PhaseVector& phases_eece, const Statevector& psi0) {
    enc::BlockEncoding pre = enc::pretransform_encoding(e, beta);
    enc::BlockEncoding seq = qsp::qsvt_sequence(pre, phases_eece);
    const double alpha = e.scale_alpha;
    const double tau = 2.0 * t * alpha / beta;
    SimulationOutcome out;
    out.block_operator = extract_block(seq);
    out.queries_used = phases_eece.degree();
    out.epsilon_declared = sup_on_grid(
        [&](double x) {
            return std::abs(qsp::block_value(phases_eece, x, qsp::Basis::computational) -
                            std::exp(cplx(0.0, -tau * x)));
        },
        (1.0 - beta) / 2.0, (1.0 + beta) / 2.0, 1001);
    ComplexMatrix exact = matrix_exp_hermitian(hamiltonian_of(e), t);
    auto [dist, phase] = phase_aligned_distance(out.block_operator, exact);
    out.operator_error = dist;
    out.global_phase = phase;
    auto [state, p] = apply_and_postselect(seq, psi0);
    out.final_state = std::move(state);
    out.success_probability = p;
    return out;
}

// ----------------------------- time dependence ------------------------------

std::vector<TrotterStep> trotter_evolve(const TimeDependentSpec& spec, const TrotterConfig& cfg,
                                        const Statevector& psi0) {
    if (spec.steps < 1) throw domain_error("trotter_evolve: need at least one step");
    const double dt = spec.step_size();
    std::vector<TrotterStep> steps;
    steps.reserve(spec.steps);
    std::vector<cplx> chained = psi0.amplitudes;  // unnormalized running product
    double chained_norm2 = 1.0;
    double cumulative = 1.0;
    for (long long k = 0; k < spec.steps; ++k) {
        const double tk = double(k) * dt;
        enc::PauliSum hk = spec.hamiltonian_at(tk);
        ComplexMatrix hmat = enc::pauli_sum_to_matrix(hk);
        enc::BlockEncoding dil = enc::dilation_encoding(hmat, cfg.alpha);
        Statevector current;
        current.qubit_count = psi0.qubit_count;
        current.amplitudes = chained;
        double nrm = current.norm();
        for (auto& v : current.amplitudes) v /= nrm;
        SimulationOutcome stepres;
        if (cfg.algorithm == TrotterAlgorithm::roaa) {
            stepres = qsp_lcu_roaa(dil, dt, cfg.phases_cos, cfg.phases_sin, current);
        } else {
            stepres = one_shot(dil, dt, cfg.beta, cfg.phases_eece, current);
        }
        // chain the block operator; per-step p is the conditional probability
        std::vector<cplx> next = apply_matrix(stepres.block_operator, chained);
        double next_norm2 = 0.0;
        for (const auto& v : next) next_norm2 += std::norm(v);
        double pstep = next_norm2 / chained_norm2;
        stepres.success_probability = pstep;
        cumulative *= pstep;
        chained = std::move(next);
        chained_norm2 = next_norm2;
        if (cfg.postselect_each_step) {
            double nn = std::sqrt(chained_norm2);
            for (auto& v : chained) v /= nn;
            chained_norm2 = 1.0;
        }
        TrotterStep entry;
        entry.outcome = std::move(stepres);
        entry.cumulative_success = cumulative;
        entry.cumulative_state.qubit_count = psi0.qubit_count;
        entry.cumulative_state.amplitudes = chained;
        entry.cumulative_state.normalize();
        entry.outcome.final_state = entry.cumulative_state;
        steps.push_back(std::move(entry));
    }
    return steps;
}

namespace {

ComplexMatrix rk4_evolution(const TimeDependentSpec& spec, long long substeps) {
    const std::size_t dim =
        enc::pauli_sum_to_matrix(spec.hamiltonian_at(0.0)).rows();
    ComplexMatrix u = ComplexMatrix::identity(dim);
    const double h = spec.total_time / double(substeps);
    auto deriv = [&](double t, const ComplexMatrix& m) {
        ComplexMatrix hm = enc::pauli_sum_to_matrix(spec.hamiltonian_at(t));
        return cplx(0.0, -1.0) * (hm * m);
    };
    for (long long i = 0; i < substeps; ++i) {
        double t = double(i) * h;
        ComplexMatrix k1 = deriv(t, u);
        ComplexMatrix k2 = deriv(t + h / 2.0, u + (h / 2.0) * k1);
        ComplexMatrix k3 = deriv(t + h / 2.0, u + (h / 2.0) * k2);
        ComplexMatrix k4 = deriv(t + h, u + h * k3);
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

ComplexMatrix polar_unitary(const ComplexMatrix& u) {
    // U (U^dag U)^{-1/2}
    ComplexMatrix g = u.adjoint() * u;
    EigResult e = hermitian_eig(g);
    const std::size_t n = g.rows();
    ComplexMatrix inv_root(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double v = e.values[k];
        if (v <= 0.0) throw numeric_error("polar projection: singular factor");
        double w = 1.0 / std::sqrt(v);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                inv_root(r, c) += w * e.vectors(r, k) * std::conj(e.vectors(c, k));
    }
    return u * inv_root;
}

} // namespace

ComplexMatrix exact_evolution_td(const TimeDependentSpec& spec, long long substeps) {
    if (spec.total_time == 0.0)
        return ComplexMatrix::identity(enc::pauli_sum_to_matrix(spec.hamiltonian_at(0.0)).rows());
    if (substeps < 1) throw domain_error("exact_evolution_td: substeps must be positive");
    ComplexMatrix u = rk4_evolution(spec, substeps);
    for (int attempt = 0; attempt < 6; ++attempt) {
        ComplexMatrix u2 = rk4_evolution(spec, substeps * 2);
        double diff = (u2 - u).max_abs();
        u = std::move(u2);
        substeps *= 2;
        if (diff <= 1e-8) return polar_unitary(u);
    }
    throw numeric_error("exact_evolution_td: step-doubling did not converge to 1e-8");
}

// --------------------------------- plumbing ---------------------------------

std::pair<Statevector, double> apply_and_postselect(const enc::BlockEncoding& e,
                                                    const Statevector& psi0) {
    const std::size_t n = e.system_dim();
    if (psi0.dim() != n) throw domain_error("apply_and_postselect: state dimension mismatch");
    std::vector<cplx> full(e.total_dim(), cplx(0.0));
    const std::size_t off = e.signal_state * n;
    for (std::size_t i = 0; i < n; ++i) full[off + i] = psi0.amplitudes[i];
    std::vector<cplx> evolved = apply_matrix(e.unitary, full);
    Statevector out;
    out.qubit_count = e.system_qubits;
    out.amplitudes.assign(evolved.begin() + off, evolved.begin() + off + n);
    double p = 0.0;
    for (const auto& v : out.amplitudes) p += std::norm(v);
    if (p < 1e-300) throw numeric_error("apply_and_postselect: zero-probability projection");
    double inv = 1.0 / std::sqrt(p);
    for (auto& v : out.amplitudes) v *= inv;
    return {std::move(out), p};
}

double expectation_sigma_z(const Statevector& psi, std::size_t site) {
    if (site >= psi.qubit_count) throw domain_error("expectation_sigma_z: site out of range");
    const std::size_t shift = psi.qubit_count - 1 - site;
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        double w = std::norm(psi.amplitudes[i]);
        acc += ((i >> shift) & 1) ? -w : w;
    }
    return acc;
}

double occupation_number(const Statevector& psi, std::size_t orbital_a, std::size_t orbital_b) {
    if (orbital_a >= psi.qubit_count || orbital_b >= psi.qubit_count)
        throw domain_error("occupation_number: orbital index out of range");
    const std::size_t sa = psi.qubit_count - 1 - orbital_a;
    const std::size_t sb = psi.qubit_count - 1 - orbital_b;
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        double w = std::norm(psi.amplitudes[i]);
        acc += w * double(((i >> sa) & 1) + ((i >> sb) & 1));
    }
    return acc;
}

std::pair<double, double> phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    // Frobenius-optimal phase, then golden-section refinement of the
    // spectral-norm objective around it
    cplx overlap = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) overlap += std::conj(b(r, c)) * a(r, c);
    double phi0 = (std::abs(overlap) > 0.0) ? -std::arg(overlap) : 0.0;
    auto dist = [&](double phi) {
        return spectral_norm(a * std::exp(cplx(0.0, phi)) - b);
    };
    double lo = phi0 - 0.2, hi = phi0 + 0.2;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = dist(x1), f2 = dist(x2);
    for (int i = 0; i < 60; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = dist(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = dist(x2);
        }
    }
    double phi = 0.5 * (lo + hi);
    return {dist(phi), phi};
}

} // namespace qspsim::alg
