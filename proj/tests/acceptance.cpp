// Acceptance suite: one check per numbered criterion, each printed as a
// single PASS/FAIL line with the measured quantities. Exit code is the
// number of failed criteria.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "qspsim/experiments.hpp"

using namespace qspsim;

namespace {

int failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail) {
    std::printf("%s: %2d. %s  [%s]\n", ok ? "PASS" : "FAIL", index, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

ComplexMatrix random_hermitian_unit(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    auto u = [&] { return double(rng()) / 4294967296.0 * 2.0 - 1.0; };
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        m(r, r) = u();
        for (std::size_t c = r + 1; c < n; ++c) {
            m(r, c) = cplx(u(), u());
            m(c, r) = std::conj(m(r, c));
        }
    }
    m *= cplx(0.9 / spectral_norm(m));
    return m;
}

qsp::PhaseVector random_phases(int degree, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<double> p(degree + 1);
    for (auto& v : p) v = (double(rng()) / 4294967296.0 - 0.5) * 2.0 * M_PI;
    return qsp::PhaseVector(std::move(p));
}

enc::BlockEncoding heisenberg_dilation(double alpha) {
    enc::PauliSum hs =
        enc::heisenberg_hamiltonian(2, enc::BondCoupling{1.0, 0.0, 0.0}, {0.5, 0.5});
    return enc::dilation_encoding(enc::pauli_sum_to_matrix(hs), alpha);
}

// ----------------------------- criterion bodies -----------------------------

void criterion_1() {
    double worst_ratio = 0.0;  // measured / allowed, over every sub-check
    bool degrees_ok = true;
    for (double tau : {1.0, 5.25, 26.25}) {
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            poly::ChebyshevPolynomial pc = poly::jacobi_anger_cos(tau, eps);
            poly::ChebyshevPolynomial ps = poly::jacobi_anger_sin(tau, eps);
            double ec = poly::measure_error(pc, poly::TargetFunction::cosine(tau), {{-1, 1}},
                                            1001).epsilon_measured;
            double es = poly::measure_error(ps, poly::TargetFunction::sine(tau), {{-1, 1}},
                                            1001).epsilon_measured;
            worst_ratio = std::max(worst_ratio, std::max(ec, es) / (2.0 * eps));
        }
    }
    for (double eps : {1e-2, 1e-3}) {
        for (double delta : {0.3, 0.6, 0.98}) {
            poly::ChebyshevPolynomial pg = poly::sign_poly(eps, delta);
            double eg = poly::measure_error(pg, poly::TargetFunction::sign(),
                                            {{-1.0, -delta / 2.0}, {delta / 2.0, 1.0}}, 1001)
                            .epsilon_measured;
            worst_ratio = std::max(worst_ratio, eg / eps);
            if (pg.degree() != cplx_count::gamma_degree(eps, delta)) degrees_ok = false;
        }
    }
    poly::ChebyshevPolynomial pe = poly::eece_poly(0.05, 0.6, 26.25);
    double ee = poly::measure_error(pe, poly::TargetFunction::eece(26.25), {{0.3, 1.0}}, 1001)
                    .epsilon_measured;
    worst_ratio = std::max(worst_ratio, ee / 0.05);
    report(1, "approximation suite: cos/sin <= 2eps, sign/eece <= eps, degree = gamma",
           worst_ratio <= 1.0 && degrees_ok,
           fmt("worst error/budget = %.3f, sign degrees %s", worst_ratio,
               degrees_ok ? "exact" : "MISMATCH"));
}

void criterion_2() {
    double worst_rel = 0.0;
    for (double tau : {0.5, 1.0, 5.0, 25.0, 100.0}) {
        for (double eps : {1e-2, 1e-4, 1e-8}) {
            double r = poly::r_function(tau, eps);
            worst_rel = std::max(worst_rel, std::abs(std::pow(tau / r, r) - eps) / eps);
        }
    }
    double unit = std::abs(poly::r_function(1.0, std::exp(-std::exp(1.0))) - std::exp(1.0));
    report(2, "r-function identity on the grid; r(1, e^-e) = e",
           worst_rel <= 1e-9 && unit <= 1e-12,
           fmt("max relative defect %.2e, |r(1,e^-e) - e| = %.2e", worst_rel, unit));
}

void criterion_3() {
    double worst_unitarity = 0.0, worst_diag = 0.0, worst_lemma = 0.0, worst_a4 = 0.0;

    ComplexMatrix h = random_hermitian_unit(4, 5);
    enc::BlockEncoding dil = enc::dilation_encoding(h, 1.0);
    for (int d : {3, 6, 11}) {
        qsp::PhaseVector ph = random_phases(d, 17 + d);
        enc::BlockEncoding q1 = qsp::qet_sequence(dil, ph);
        enc::BlockEncoding q2 = qsp::qsvt_sequence(dil, ph);
        ComplexMatrix g1 = q1.unitary.adjoint() * q1.unitary - ComplexMatrix::identity(8);
        ComplexMatrix g2 = q2.unitary.adjoint() * q2.unitary - ComplexMatrix::identity(8);
        worst_unitarity = std::max({worst_unitarity, g1.max_abs(), g2.max_abs()});
    }

    const double entries[4] = {-0.9, -0.3, 0.2, 0.8};
    qsp::PhaseVector ph7 = random_phases(7, 29);
    qsp::PhaseVector ph6 = random_phases(6, 31);
    for (int code = 0; code < 256; ++code) {
        ComplexMatrix a(4, 4);
        int c = code;
        for (int i = 0; i < 4; ++i) {
            a(i, i) = entries[c % 4];
            c /= 4;
        }
        enc::BlockEncoding e = enc::dilation_encoding(a, 1.0);
        for (const qsp::PhaseVector* ph : {&ph7, &ph6}) {
            ComplexMatrix blk = extract_block(qsp::qet_sequence(e, *ph));
            for (int i = 0; i < 4; ++i) {
                cplx want = qsp::block_value(*ph, a(i, i).real(), qsp::Basis::computational);
                worst_diag = std::max(worst_diag, std::abs(blk(i, i) - want));
            }
        }
    }

    for (std::uint32_t seed : {41u, 42u}) {
        qsp::PhaseVector ph = random_phases(9, seed);
        for (double r : {0.3, 0.5, 0.8}) {
            for (double theta : {0.4, 1.3}) {
                ComplexMatrix u0(2, 2);
                u0(0, 0) = std::exp(cplx(0.0, theta));
                u0(1, 1) = std::exp(cplx(0.0, -theta));
                enc::BlockEncoding e = enc::scale_encoding(enc::trivial_encoding(u0), r);
                ComplexMatrix blk = extract_block(qsp::qsvt_sequence(e, ph));
                cplx pr = qsp::block_value(ph, r, qsp::Basis::computational);
                worst_lemma = std::max(
                    worst_lemma, std::abs(blk(0, 0) - pr * std::exp(cplx(0.0, theta))));
                worst_lemma = std::max(
                    worst_lemma, std::abs(blk(1, 1) - pr * std::exp(cplx(0.0, -theta))));
            }
        }
    }

    for (std::uint32_t seed = 0; seed < 50; ++seed) {
        qsp::PhaseVector ph = random_phases(4 + int(seed % 17), 100 + seed);
        for (int i = 0; i <= 100; ++i) {
            double x = -0.999 + 1.998 * i / 100.0;
            ComplexMatrix u = qsp::qsp_unitary(ph, x);
            cplx pp = u(0, 0);
            cplx qq = u(0, 1) / cplx(0.0, std::sqrt(1.0 - x * x));
            worst_a4 = std::max(
                worst_a4, std::abs(std::norm(pp) + (1.0 - x * x) * std::norm(qq) - 1.0));
        }
    }

    bool ok = worst_unitarity <= 1e-9 && worst_diag <= 1e-9 && worst_lemma <= 1e-8 &&
              worst_a4 <= 1e-10;
    report(3, "QSP/QET/QSVT: unitarity, diagonal equivalence, phase retention, P-Q identity", ok,
           fmt("unitarity %.1e, diag %.1e, lemma1 %.1e, A4 %.1e", worst_unitarity, worst_diag,
               worst_lemma, worst_a4));
}

void criterion_4() {
    double worst_rt = 0.0, spectrum_violation = 0.0;
    for (std::uint32_t seed : {61u, 62u, 63u}) {
        for (std::size_t q : {2ul, 3ul}) {
            ComplexMatrix h = random_hermitian_unit(std::size_t(1) << q, seed + 7 * q);
            enc::BlockEncoding dil = enc::dilation_encoding(h, 1.0);
            worst_rt = std::max(worst_rt, (extract_block(dil) - h).max_abs());
            for (double beta : {0.25, 0.4, 0.5, 1.0}) {
                enc::BlockEncoding s = enc::scale_encoding(dil, beta);
                worst_rt = std::max(worst_rt, (extract_block(s) - beta * h).max_abs());
            }
            ComplexMatrix h2 = random_hermitian_unit(std::size_t(1) << q, seed + 7 * q + 1000);
            enc::BlockEncoding prod = enc::product_encoding(dil, enc::dilation_encoding(h2, 1.0));
            worst_rt = std::max(worst_rt, (extract_block(prod) - h * h2).max_abs());
            for (double beta : {0.25, 0.4, 0.5}) {
                enc::BlockEncoding pre = enc::pretransform_encoding(dil, beta);
                ComplexMatrix want = 0.5 * (ComplexMatrix::identity(h.rows()) + beta * h);
                worst_rt = std::max(worst_rt, (extract_block(pre) - want).max_abs());
                EigResult e = hermitian_eig(extract_block(pre));
                spectrum_violation = std::max(
                    spectrum_violation, std::max((1.0 - beta) / 2.0 - e.values.front(),
                                                 e.values.back() - (1.0 + beta) / 2.0));
            }
        }
    }
    report(4, "block-encoding round trips and pre-transformation spectrum",
           worst_rt <= 1e-10 && spectrum_violation <= 1e-10,
           fmt("round-trip %.1e, spectrum overshoot %.1e", worst_rt, spectrum_violation));
}

void criterion_5() {
    enc::BlockEncoding dil = heisenberg_dilation(1.5);
    std::mt19937 rng(2);
    auto u = [&] { return double(rng()) / 4294967296.0 * 2.0 - 1.0; };
    std::vector<double> pc(7), ps(6);
    for (auto& v : pc) v = u() * M_PI;
    for (auto& v : ps) v = u() * M_PI;
    enc::BlockEncoding w = alg::lcu_unitary(dil, qsp::PhaseVector(pc), qsp::PhaseVector(ps));
    ComplexMatrix b = extract_block(w);
    ComplexMatrix ut = 2.0 * b;
    ComplexMatrix expected = 1.5 * ut - 0.5 * (ut * ut.adjoint() * ut);
    const std::size_t dim = w.total_dim(), n = w.system_dim();
    ComplexMatrix refl = ComplexMatrix::identity(dim);
    for (std::size_t i = 0; i < n; ++i) refl(i, i) = -1.0;
    ComplexMatrix a = cplx(-1.0) * (w.unitary * refl * w.unitary.adjoint() * refl * w.unitary);
    double worst_identity = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> psi(n);
        double norm = 0.0;
        for (auto& v : psi) {
            v = cplx(u(), u());
            norm += std::norm(v);
        }
        for (auto& v : psi) v /= std::sqrt(norm);
        std::vector<cplx> full(dim, cplx(0.0));
        for (std::size_t i = 0; i < n; ++i) full[i] = psi[i];
        std::vector<cplx> lhs = apply_matrix(a, full);
        std::vector<cplx> rhs = apply_matrix(expected, psi);
        for (std::size_t i = 0; i < n; ++i)
            worst_identity = std::max(worst_identity, std::abs(lhs[i] - rhs[i]));
    }

    bool books_ok = true;
    std::mt19937 rng2(8);
    auto up = [&] { return double(rng2()) / 4294967296.0; };
    for (int i = 0; i < 40; ++i) {
        double eps = 1e-3 + 0.4 * up();
        double t = 0.2 + 8.0 * up();
        double alpha = 0.6 + 4.0 * up();
        if (cplx_count::n_roaa(eps, t, alpha) != 3 * cplx_count::n_lcu(0.4 * eps, t, alpha))
            books_ok = false;
    }
    // reference instance: d_cos = 6, d_sin = 5 gives 3 (6 + 5) = 33 queries
    qsp::SynthesisResult rc = qsp::synthesize_phases(poly::jacobi_anger_cos_degree(1.5, 6),
                                                     qsp::Basis::hadamard, 1e-4, 1);
    qsp::SynthesisResult rs = qsp::synthesize_phases(poly::jacobi_anger_sin_degree(1.5, 5),
                                                     qsp::Basis::hadamard, 1e-4, 1);
    Statevector psi0 = Statevector::basis_state(2, 0);
    alg::SimulationOutcome out = alg::qsp_lcu_roaa(dil, 1.0, rc.phases, rs.phases, psi0);
    bool instance_ok = (out.queries_used == 33);
    report(5, "ROAA triple-product identity and query bookkeeping",
           worst_identity <= 1e-10 && books_ok && instance_ok,
           fmt("identity defect %.1e, n_roaa = 3 n_lcu(2eps/5) %s, reference instance %lld",
               worst_identity, books_ok ? "exact" : "MISMATCH", out.queries_used));
}

void criterion_6() {
    enc::BlockEncoding dil = heisenberg_dilation(1.5);
    Statevector psi0 = Statevector::basis_state(2, 0);
    const double alpha = 1.5, beta = 0.4;
    poly::ChebyshevPolynomial signp = poly::sign_poly(0.02, 0.98);
    qsp::SynthesisResult rsign =
        qsp::synthesize_phases(signp, qsp::Basis::computational, 0.05, 3);
    double worst_excess = 0.0;   // operator error minus declared epsilon
    double bracket_violation = 0.0;
    double os_success_margin = 1.0;
    for (double t : {0.5, 1.5, 3.0}) {
        double tau = alpha * t;
        qsp::SynthesisResult rc = qsp::synthesize_phases(
            poly::jacobi_anger_cos_degree(tau, 6), qsp::Basis::hadamard, 1e-4, 1);
        qsp::SynthesisResult rs = qsp::synthesize_phases(
            poly::jacobi_anger_sin_degree(tau, 5), qsp::Basis::hadamard, 1e-4, 1);
        qsp::SampleTarget st;
        st.degree = 32;
        st.basis = qsp::Basis::computational;
        double lo = (1.0 - beta) / 2.0, hi = (1.0 + beta) / 2.0;
        double tau_os = 2.0 * t * alpha / beta;
        for (int j = 0; j < 32; ++j) {
            double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(M_PI * (j + 0.5) / 32.0);
            st.nodes.push_back(x);
            st.nodes.push_back(-x);
        }
        for (double x : st.nodes) st.values.push_back(std::exp(cplx(0.0, -tau_os * std::abs(x))));
        st.validation = {{lo, hi}};
        st.validation_target = [tau_os](double x) {
            return std::exp(cplx(0.0, -tau_os * std::abs(x)));
        };
        st.max_restarts = 4;
        qsp::SynthesisResult re = qsp::synthesize_to_samples(st, 0.05, 1);

        auto [w, lcu] = alg::qsp_lcu(dil, t, rc.phases, rs.phases, psi0);
        double lo_b = std::pow(1.0 - lcu.epsilon_declared, 2) / 4.0;
        double hi_b = std::pow(1.0 + lcu.epsilon_declared, 2) / 4.0;
        bracket_violation =
            std::max(bracket_violation, std::max(lo_b - lcu.success_probability,
                                                 lcu.success_probability - hi_b));
        alg::SimulationOutcome aa =
            alg::qsp_lcu_aa(dil, t, rc.phases, rs.phases, rsign.phases, psi0);
        alg::SimulationOutcome ro = alg::qsp_lcu_roaa(dil, t, rc.phases, rs.phases, psi0);
        alg::SimulationOutcome os = alg::one_shot(dil, t, beta, re.phases, psi0);
        worst_excess = std::max({worst_excess, aa.operator_error - aa.epsilon_declared,
                                 ro.operator_error - ro.epsilon_declared,
                                 os.operator_error - os.epsilon_declared});
        os_success_margin = std::min(
            os_success_margin,
            os.success_probability - (1.0 - 2.0 * os.epsilon_declared));
    }
    bool ok = worst_excess <= 1e-9 && bracket_violation <= 1e-12 && os_success_margin >= -1e-12;
    report(6, "algorithms vs exact oracle at declared epsilon (TI config)", ok,
           fmt("max err-decl excess %.1e, bracket violation %.1e, OS success margin %+.2e",
               worst_excess, bracket_violation, os_success_margin));
}

void criterion_7(const expt::PhaseCache& cache) {
    expt::Config cfg;
    auto rows = expt::run_heisenberg_ti(cfg, "", 0, cache);
    double sum_ro = 0.0, sum_os = 0.0, early_err = 0.0;
    for (const auto& r : rows) {
        sum_ro += r.p_roaa;
        sum_os += r.p_os;
        if (r.t <= 1.5) early_err = std::max(early_err, std::max(r.err_roaa, r.err_os));
    }
    double mean_ro = sum_ro / double(rows.size());
    double mean_os = sum_os / double(rows.size());
    bool ok = mean_ro >= 0.99 && mean_os >= 0.96 && early_err <= 0.05;
    report(7, "Heisenberg TI reproduction (d_cos 6, d_sin 5, d_eece 32)", ok,
           fmt("mean p: roaa %.4f (>= 0.99), os %.4f (>= 0.96); max err t<=1.5 %.2e (<= 0.05)",
               mean_ro, mean_os, early_err));
}

void criterion_8(const expt::PhaseCache& cache) {
    expt::Config cfg;
    auto [rows, summary] = expt::run_heisenberg_td(cfg, "", 0, cache);
    double min_r2 = std::min({summary.op_ideal.r_squared, summary.op_roaa.r_squared,
                              summary.op_os.r_squared});
    double end_os = summary.op_os.fitted_end;
    double end_ro = summary.op_roaa.fitted_end;
    bool ok = min_r2 >= 0.8 && end_os <= end_ro && end_os >= 0.05 && end_os <= 0.30 &&
              end_ro >= 0.05 && end_ro <= 0.30 && summary.mean_cumulative_roaa >= 0.97 &&
              summary.mean_cumulative_os >= 0.97;
    report(8, "Heisenberg TD reproduction (dt 0.5, L 24, d_eece 14)", ok,
           fmt("R2 >= %.2f; fitted end err: os %.3f <= roaa %.3f, band [0.05,0.30]; "
               "mean cumulative %.4f / %.4f (>= 0.97)",
               min_r2, end_os, end_ro, summary.mean_cumulative_roaa,
               summary.mean_cumulative_os));
}

void criterion_9(const expt::PhaseCache& cache) {
    expt::Config cfg;
    auto rows = expt::run_h2(cfg, "", 0, cache);
    // period of the exact occupation curve by first return to a local minimum
    enc::PauliSum ps = enc::load_pauli_sum("data/h2_sto3g_r0.5.pauli");
    ComplexMatrix h = enc::pauli_sum_to_matrix(ps);
    EigResult eig = hermitian_eig(h);
    Statevector psi0 = Statevector::basis_state(4, 0b0101);
    std::vector<cplx> proj(16);
    for (int k = 0; k < 16; ++k) {
        cplx acc = 0.0;
        for (int r = 0; r < 16; ++r) acc += std::conj(eig.vectors(r, k)) * psi0.amplitudes[r];
        proj[k] = acc;
    }
    const double fs_per_au = 0.02418884254;
    auto na_at = [&](double t_fs) {
        double t = t_fs / fs_per_au;
        Statevector s(4);
        for (int r = 0; r < 16; ++r) {
            cplx acc = 0.0;
            for (int k = 0; k < 16; ++k)
                acc += eig.vectors(r, k) * std::exp(cplx(0.0, -eig.values[k] * t)) * proj[k];
            s.amplitudes[r] = acc;
        }
        return alg::occupation_number(s, 0, 2);
    };
    double period = 0.0;
    double prev2 = na_at(0.0), prev1 = na_at(0.00005);
    for (int i = 2; i <= 3000; ++i) {
        double t = 0.00005 * i;
        double cur = na_at(t);
        if (prev1 < prev2 && prev1 < cur && t > 0.02) {
            period = t - 0.00005;
            break;
        }
        prev2 = prev1;
        prev1 = cur;
    }

    double err_sum = 0.0;
    int confident = 0;
    bool flags_ok = true;
    for (const auto& r : rows) {
        if (r.p_os > 0.85) {
            err_sum += r.err_os;
            ++confident;
        }
        if (r.low_confidence_os != (r.p_os < 0.85)) flags_ok = false;
        if (r.low_confidence_roaa != (r.p_roaa < 0.85)) flags_ok = false;
    }
    double mean_err = confident ? err_sum / double(confident) : 1.0;
    bool ok = std::abs(period - 0.12) <= 0.01 && mean_err <= 0.10 && flags_ok && confident > 0;
    report(9, "H2 charge migration (shipped Hamiltonian, one-shot vs exact)", ok,
           fmt("period %.4f fs (0.12 +- 0.01), mean OS error %.4f over %d confident rows "
               "(<= 0.10), 0.85 flags %s",
               period, mean_err, confident, flags_ok ? "consistent" : "MISMATCH"));
}

void criterion_10() {
    std::mt19937 rng(77);
    auto up = [&] { return double(rng()) / 4294967296.0; };
    bool parity_ok = true;
    for (int i = 0; i < 200; ++i) {
        double eps = 1e-4 + 0.25 * up();
        double t = 0.05 + 10.0 * up();
        double alpha = 0.5 + 5.0 * up();
        double beta = 0.1 + 0.8 * up();
        if ((cplx_count::n_lcu(eps, t, alpha) - 1) % 4 != 0) parity_ok = false;
        if (cplx_count::n_roaa(eps, t, alpha) % 3 != 0) parity_ok = false;
        if (cplx_count::n_os(eps, beta, t, alpha) % 2 != 0) parity_ok = false;
    }
    bool dominates = true;
    bool crossing_t = false, crossing_eps = false;
    long long prev_sign = 0;
    for (int i = 0; i < 19; ++i) {
        double t = 1.0 + 9.0 * i / 18.0;
        long long aa = cplx_count::n_aa(0.02, 0.04, t, 5.0);
        long long ro = cplx_count::n_roaa(0.02, t, 5.0);
        long long os = cplx_count::n_os(0.02, 0.5, t, 5.0);
        if (aa <= ro || aa <= os) dominates = false;
        long long sgn = (os > ro) - (os < ro);
        if (i > 0 && sgn != 0 && prev_sign != 0 && sgn != prev_sign) crossing_t = true;
        if (sgn != 0) prev_sign = sgn;
    }
    prev_sign = 0;
    for (int i = 0; i < 13; ++i) {
        double eps = 1e-4 * std::pow(1e3, i / 12.0);
        long long aa = cplx_count::n_aa(eps, 2.0 * eps, 5.0, 5.0);
        long long ro = cplx_count::n_roaa(eps, 5.0, 5.0);
        long long os = cplx_count::n_os(eps, 0.5, 5.0, 5.0);
        if (aa <= ro || aa <= os) dominates = false;
        long long sgn = (os > ro) - (os < ro);
        if (i > 0 && sgn != 0 && prev_sign != 0 && sgn != prev_sign) crossing_eps = true;
        if (sgn != 0) prev_sign = sgn;
    }
    bool ok = parity_ok && dominates && (crossing_t || crossing_eps);
    report(10, "complexity calculators: parities, AA domination, OS/ROAA crossing", ok,
           fmt("parities %s, AA dominates %s, crossing in t-sweep %s / eps-sweep %s",
               parity_ok ? "ok" : "BAD", dominates ? "yes" : "NO", crossing_t ? "yes" : "no",
               crossing_eps ? "yes" : "no"));
}

void criterion_11() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("qspsim_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    expt::PhaseCache cache;
    cache.enabled = false;
    const char* ti_conf =
        "time.points = 4\ntime.max = 1.0\ndegrees.cos = 4\ndegrees.sin = 3\ndegrees.eece = 8\n";
    const char* td_conf =
        "time.steps = 3\ndegrees.cos = 2\ndegrees.sin = 3\ndegrees.eece = 8\n"
        "oracle.substeps_per_unit = 400\n";
    bool ok = true;
    for (int run = 0; run < 2; ++run) {
        std::string tag = run == 0 ? "a" : "b";
        expt::Config ti = expt::Config::from_text(ti_conf);
        expt::run_heisenberg_ti(ti, (dir / ("ti_" + tag + ".csv")).string(), 3, cache);
        expt::Config td = expt::Config::from_text(td_conf);
        expt::run_heisenberg_td(td, (dir / ("td_" + tag + ".csv")).string(), 3, cache);
        expt::Config cx;
        expt::run_complexity_sweep(cx, (dir / ("cx_" + tag + ".csv")).string());
        expt::Config ap = expt::Config::from_text("approx.target = sign\n");
        expt::run_approx_report(ap, (dir / ("ap_" + tag + ".json")).string());
    }
    for (const char* base : {"ti", "td", "cx"}) {
        if (slurp((dir / (std::string(base) + "_a.csv")).string()) !=
            slurp((dir / (std::string(base) + "_b.csv")).string()))
            ok = false;
    }
    if (slurp((dir / "ti_a.csv").string()).empty()) ok = false;
    if (slurp((dir / "td_a.csv.summary.json").string()) !=
        slurp((dir / "td_b.csv.summary.json").string()))
        ok = false;
    if (slurp((dir / "ap_a.json").string()) != slurp((dir / "ap_b.json").string())) ok = false;
    fs::remove_all(dir);
    report(11, "byte-identical reruns of CSV and JSON outputs", ok,
           ok ? "all outputs identical" : "outputs DIFFER between reruns");
}

} // namespace

int main() {
    std::printf("qspsim acceptance suite\n");
    expt::PhaseCache cache;
    cache.enabled = false;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7(cache);
    criterion_8(cache);
    criterion_9(cache);
    criterion_10();
    criterion_11();
    std::printf("%s (%d of 11 criteria failed)\n", failures == 0 ? "ALL PASS" : "FAILURES",
                failures);
    return failures;
}
