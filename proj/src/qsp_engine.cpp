#include "qspsim/qsp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qspsim::qsp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_phase(double phi) {
    if (!std::isfinite(phi)) throw domain_error("phase not finite");
    double w = std::fmod(phi, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    if (w > kPi) w -= 2.0 * kPi;
    return w;
}

// 2x2 complex matrix with inlined arithmetic for the synthesis hot loop
struct M2 {
    cplx a, b, c, d;
    M2 operator*(const M2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

M2 w_times_z(double x, double s, double cph, double sph) {
    // W(x) * diag(e^{i phi}, e^{-i phi}) with e^{i phi} = cph + i sph
    cplx e(cph, sph), ec(cph, -sph);
    cplx is(0.0, s);
    return {x * e, is * ec, is * e, x * ec};
}

M2 z_rot(double cph, double sph) {
    return {cplx(cph, sph), 0.0, 0.0, cplx(cph, -sph)};
}

cplx entry(const M2& m, Basis basis) {
    if (basis == Basis::computational) return m.a;
    return 0.5 * (m.a + m.b + m.c + m.d);  // <+|M|+>
}

// deterministic uniform/gaussian helpers on top of mt19937_64
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ^ 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double gaussian() {
        double u1 = std::max(uniform(), 1e-300), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }
};

struct Objective {
    int degree;
    Basis basis;
    std::vector<double> xs;
    std::vector<cplx> targets;
    double modulus_weight = 0.0;

    // residual vector (real and imaginary parts per node) and its Jacobian
    // with respect to the d+1 phases
    void residuals(const std::vector<double>& phis, std::vector<double>& r,
                   std::vector<double>* jac) const {
        const int d = degree;
        const std::size_t n = xs.size();
        const bool with_mod = modulus_weight > 0.0;
        const std::size_t rows_per_node = with_mod ? 3 : 2;
        const double wmod = std::sqrt(modulus_weight);
        r.assign(rows_per_node * n, 0.0);
        if (jac) jac->assign(rows_per_node * n * (d + 1), 0.0);
        std::vector<M2> pre(d + 1), suf(d + 2);
        std::vector<double> cph(d + 1), sph(d + 1);
        for (int k = 0; k <= d; ++k) {
            cph[k] = std::cos(phis[k]);
            sph[k] = std::sin(phis[k]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double x = xs[j];
            const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
            pre[0] = z_rot(cph[0], sph[0]);
            for (int k = 1; k <= d; ++k) pre[k] = pre[k - 1] * w_times_z(x, s, cph[k], sph[k]);
            const cplx b = entry(pre[d], basis);
            const cplx res = b - targets[j];
            r[rows_per_node * j] = res.real();
            r[rows_per_node * j + 1] = res.imag();
            if (with_mod) r[rows_per_node * j + 2] = wmod * (1.0 - std::norm(b));
            if (!jac) continue;
            suf[d + 1] = {1.0, 0.0, 0.0, 1.0};
            for (int k = d; k >= 1; --k) suf[k] = w_times_z(x, s, cph[k], sph[k]) * suf[k + 1];
            for (int k = 0; k <= d; ++k) {
                // dM_k/dphi_k = M_k * diag(i, -i); chain in prefix/suffix
                M2 left = (k == 0) ? z_rot(cph[0], sph[0]) : pre[k];
                M2 dm = {left.a * cplx(0.0, 1.0), left.b * cplx(0.0, -1.0),
                         left.c * cplx(0.0, 1.0), left.d * cplx(0.0, -1.0)};
                M2 full = dm * suf[k + 1];
                cplx db = entry(full, basis);
                (*jac)[(rows_per_node * j) * (d + 1) + k] = db.real();
                (*jac)[(rows_per_node * j + 1) * (d + 1) + k] = db.imag();
                if (with_mod)
                    (*jac)[(rows_per_node * j + 2) * (d + 1) + k] =
                        -2.0 * wmod * std::real(std::conj(b) * db);
            }
        }
    }

    double value(const std::vector<double>& phis) const {
        std::vector<double> r;
        residuals(phis, r, nullptr);
        double f = 0.0;
        for (double v : r) f += v * v;
        return f;
    }
};

struct MinimizeOutcome {
    std::vector<double> phis;
    double f = 0.0;
    long long iterations = 0;
};

// solve (A + mu diag(A)) x = b for symmetric positive semidefinite A
bool solve_damped(std::vector<double> a, std::vector<double> b, double mu, int n,
                  std::vector<double>& x) {
    for (int i = 0; i < n; ++i) a[i * n + i] += mu * std::max(a[i * n + i], 1e-12);
    // Cholesky
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[i * n + j];
            for (int k = 0; k < j; ++k) sum -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (sum <= 0.0) return false;
                a[i * n + i] = std::sqrt(sum);
            } else {
                a[i * n + j] = sum / a[j * n + j];
            }
        }
    }
    x.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double sum = b[i];
        for (int k = 0; k < i; ++k) sum -= a[i * n + k] * x[k];
        x[i] = sum / a[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double sum = x[i];
        for (int k = i + 1; k < n; ++k) sum -= a[k * n + i] * x[k];
        x[i] = sum / a[i * n + i];
    }
    return true;
}

// Levenberg-Marquardt on the residual vector; quadratic near the zero-residual
// solutions that exactly representable targets admit
MinimizeOutcome lm_minimize(const Objective& obj, std::vector<double> phis, long long max_iter) {
    const int n = int(phis.size());
    std::vector<double> r, jac, jtj(n * n), jtr(n), step, trial(phis.size());
    obj.residuals(phis, r, &jac);
    double f = 0.0;
    for (double v : r) f += v * v;
    double mu = 1e-3;
    long long it = 0;
    int stagnant = 0;
    const std::size_t m = r.size();
    for (; it < max_iter; ++it) {
        std::fill(jtj.begin(), jtj.end(), 0.0);
        std::fill(jtr.begin(), jtr.end(), 0.0);
        for (std::size_t row = 0; row < m; ++row) {
            const double* jr = &jac[row * n];
            for (int i = 0; i < n; ++i) {
                jtr[i] += jr[i] * r[row];
                for (int j = 0; j <= i; ++j) jtj[i * n + j] += jr[i] * jr[j];
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) jtj[i * n + j] = jtj[j * n + i];
        double gmax = 0.0;
        for (double v : jtr) gmax = std::max(gmax, std::abs(v));
        if (gmax < 1e-14 || f < 1e-26) break;
        bool accepted = false;
        for (int attempt = 0; attempt < 25; ++attempt) {
            std::vector<double> neg = jtr;
            for (auto& v : neg) v = -v;
            if (!solve_damped(jtj, neg, mu, n, step)) {
                mu *= 10.0;
                continue;
            }
            for (int i = 0; i < n; ++i) trial[i] = phis[i] + step[i];
            double ftrial = obj.value(trial);
            if (ftrial < f) {
                double decrease = f - ftrial;
                phis = trial;
                f = ftrial;
                mu = std::max(mu / 3.0, 1e-14);
                obj.residuals(phis, r, &jac);
                accepted = true;
                if (decrease <= 1e-11 * std::max(f, 1e-24)) {
                    ++stagnant;
                } else {
                    stagnant = 0;
                }
                break;
            }
            mu *= 4.0;
        }
        if (!accepted || stagnant >= 25) break;
    }
    return {std::move(phis), f, it};
}

std::vector<double> symmetric_init(int degree) {
    std::vector<double> p(degree + 1, 0.0);
    p.front() += kPi / 4.0;
    p.back() += kPi / 4.0;
    return p;
}

} // namespace

// ------------------------------- PhaseVector --------------------------------

PhaseVector::PhaseVector(std::vector<double> p, Convention c) : phases(std::move(p)), convention(c) {
    if (phases.empty()) throw domain_error("PhaseVector: need at least one phase");
    for (auto& v : phases) v = wrap_phase(v);
}

ComplexMatrix signal_operator(double x) {
    if (std::abs(x) > 1.0) throw domain_error("signal_operator: |x| > 1");
    double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    ComplexMatrix w(2, 2);
    w(0, 0) = x;
    w(0, 1) = cplx(0.0, s);
    w(1, 0) = cplx(0.0, s);
    w(1, 1) = x;
    return w;
}

ComplexMatrix qsp_unitary(const PhaseVector& phases, double x) {
    if (phases.convention != Convention::wx_signal)
        throw domain_error("qsp_unitary: expects Wx-signal phases");
    if (std::abs(x) > 1.0) throw domain_error("qsp_unitary: |x| > 1");
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    M2 u = z_rot(std::cos(phases.phases[0]), std::sin(phases.phases[0]));
    for (std::size_t k = 1; k < phases.phases.size(); ++k)
        u = u * w_times_z(x, s, std::cos(phases.phases[k]), std::sin(phases.phases[k]));
    ComplexMatrix m(2, 2);
    m(0, 0) = u.a;
    m(0, 1) = u.b;
    m(1, 0) = u.c;
    m(1, 1) = u.d;
    return m;
}

cplx block_value(const PhaseVector& phases, double x, Basis basis) {
    ComplexMatrix u = qsp_unitary(phases, x);
    if (basis == Basis::computational) return u(0, 0);
    return 0.5 * (u(0, 0) + u(0, 1) + u(1, 0) + u(1, 1));
}

// --------------------------------- synthesis --------------------------------

namespace {

SynthesisResult run_synthesis(const Objective& obj, double tolerance, std::uint64_t seed,
                              const std::vector<poly::Interval>& validation,
                              const std::function<cplx(double)>& validation_target,
                              int max_restarts = 8,
                              const std::vector<double>* warm_start = nullptr) {
    const int d = obj.degree;
    const long long cap = std::max(3000LL, 10LL * d * d);
    Rng rng(seed);
    MinimizeOutcome best;
    best.f = 1e300;
    long long total_iters = 0;
    double best_sup = 1e300;
    std::vector<double> best_phis;

    auto sup_error = [&](const std::vector<double>& phis) {
        PhaseVector pv(phis);
        double worst = 0.0;
        for (std::size_t j = 0; j < obj.xs.size(); ++j)
            worst = std::max(worst,
                             std::abs(block_value(pv, obj.xs[j], obj.basis) - obj.targets[j]));
        for (const auto& iv : validation) {
            for (int i = 0; i < 201; ++i) {
                double x = iv.lo + (iv.hi - iv.lo) * double(i) / 200.0;
                worst = std::max(worst, std::abs(block_value(pv, x, obj.basis) -
                                                 validation_target(x)));
            }
        }
        return worst;
    };

    max_restarts = std::max(1, std::min(max_restarts, 8));
    for (int restart = 0; restart < max_restarts; ++restart) {
        std::vector<double> start;
        if (restart == 0 && warm_start && int(warm_start->size()) == d + 1) {
            start = *warm_start;
        } else {
            start = symmetric_init(d);
            if (restart > 0)
                for (auto& v : start) v += 0.15 * double(restart) * rng.gaussian();
        }
        MinimizeOutcome out = lm_minimize(obj, std::move(start), cap);
        total_iters += out.iterations;
        double sup = sup_error(out.phis);
        if (sup < best_sup) {
            best_sup = sup;
            best_phis = out.phis;
            best.f = out.f;
        }
        if (best_sup <= tolerance) break;
    }

    SynthesisResult res;
    res.phases = PhaseVector(best_phis);
    res.achieved_error = best_sup;
    res.iterations = total_iters;
    res.converged = best_sup <= tolerance;
    return res;
}

} // namespace

namespace {

Objective truncated_objective(const poly::ChebyshevPolynomial& target, Basis basis, int degree) {
    std::vector<cplx> coeffs(target.coeffs.begin(),
                             target.coeffs.begin() + std::min<std::size_t>(degree + 1,
                                                                           target.coeffs.size()));
    Objective obj;
    obj.degree = degree;
    obj.basis = basis;
    obj.xs.resize(degree + 1);
    obj.targets.resize(degree + 1);
    for (int j = 0; j <= degree; ++j) {
        obj.xs[j] = std::cos(kPi * (j + 0.5) / double(degree + 1));
        obj.targets[j] = chebyshev_eval(coeffs, obj.xs[j]);
    }
    return obj;
}

// Appending the pair (pi/2, -pi/2) adds two signal applications without
// changing the realized polynomial, so low-degree solutions seed high-degree
// ones exactly.
std::vector<double> extend_by_identity_pair(std::vector<double> phis) {
    phis.push_back(kPi / 2.0);
    phis.push_back(-kPi / 2.0);
    return phis;
}

} // namespace

SynthesisResult synthesize_phases(const poly::ChebyshevPolynomial& target, Basis basis,
                                  double tolerance, std::uint64_t seed) {
    target.check_parity();
    if (!target.qsp_admissible())
        throw domain_error("synthesize_phases: target exceeds unit magnitude on [-1,1]");
    const int d = target.degree();
    Objective obj = truncated_objective(target, basis, d);
    std::vector<poly::Interval> validation = {{-1.0, 1.0}};
    auto vt = [&target](double x) { return target.eval(x); };

    // degree continuation: solve truncations of the target from the bottom
    // up, reusing each solution (tiny top coefficients otherwise leave the
    // optimizer on a flat plateau)
    std::vector<double> warm;
    {
        int base = d % 2;
        std::vector<double> phis = symmetric_init(base);
        for (int level = base; level <= d; level += 2) {
            Objective lobj = (level == d) ? obj : truncated_objective(target, basis, level);
            MinimizeOutcome out = lm_minimize(lobj, phis, std::max(400LL, 10LL * level * level));
            phis = std::move(out.phis);
            if (level < d) phis = extend_by_identity_pair(std::move(phis));
        }
        warm = std::move(phis);
    }
    return run_synthesis(obj, tolerance, seed, validation, vt, 8, &warm);
}

SynthesisResult synthesize_to_samples(const SampleTarget& target, double tolerance,
                                      std::uint64_t seed) {
    if (target.nodes.size() != target.values.size() || target.nodes.empty())
        throw domain_error("synthesize_to_samples: node/value mismatch");
    Objective obj;
    obj.degree = target.degree;
    obj.basis = target.basis;
    obj.xs = target.nodes;
    obj.targets = target.values;
    obj.modulus_weight = target.modulus_weight;
    std::function<cplx(double)> vt = target.validation_target;
    if (!vt) vt = [](double) { return cplx(0.0); };
    return run_synthesis(obj, tolerance, seed, target.validation, vt, target.max_restarts);
}

// ----------------------------------- lifts ----------------------------------

ComplexMatrix projector_phase(const std::vector<std::size_t>& projector_states, double phi,
                              std::size_t total_qubits) {
    if (projector_states.empty()) throw domain_error("projector_phase: empty projector");
    const std::size_t dim = std::size_t(1) << total_qubits;
    ComplexMatrix m(dim, dim);
    cplx minus = std::exp(cplx(0.0, -phi));
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = minus;
    cplx plus = std::exp(cplx(0.0, phi));
    for (std::size_t s : projector_states) {
        if (s >= dim) throw domain_error("projector_phase: state index out of range");
        m(s, s) = plus;
    }
    return m;
}

namespace {

// diag phase e^{+i phi} on the signal block, e^{-i phi} elsewhere
ComplexMatrix signal_phase(const enc::BlockEncoding& e, double phi) {
    const std::size_t dim = e.total_dim();
    const std::size_t n = e.system_dim();
    ComplexMatrix m(dim, dim);
    cplx plus = std::exp(cplx(0.0, phi)), minus = std::exp(cplx(0.0, -phi));
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = minus;
    for (std::size_t i = 0; i < n; ++i) m(e.signal_state * n + i, e.signal_state * n + i) = plus;
    return m;
}

// wx phases -> projector phases: -pi/4 at the ends, -pi/2 in the middle;
// the residual global factor is i^degree.
std::vector<double> to_reflection(const std::vector<double>& wx) {
    std::vector<double> out = wx;
    const int d = int(wx.size()) - 1;
    if (d == 0) return out;
    out.front() -= kPi / 4.0;
    out.back() -= kPi / 4.0;
    for (int k = 1; k < d; ++k) out[k] -= kPi / 2.0;
    return out;
}

cplx global_phase_compensation(int degree) {
    // i^degree
    switch (degree & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace

enc::BlockEncoding qet_sequence(const enc::BlockEncoding& e, const PhaseVector& phases,
                                Basis basis) {
    if (phases.convention != Convention::wx_signal)
        throw domain_error("qet_sequence: expects Wx-signal phases");
    const int d = phases.degree();
    ComplexMatrix udag = e.unitary.adjoint();
    double herm_gap = (e.unitary - udag).max_abs();
    if (herm_gap > 1e-9)
        throw numeric_error("qet_sequence: encoding unitary must be Hermitian (qubitized)");
    std::vector<double> ph = to_reflection(phases.phases);
    ComplexMatrix m = signal_phase(e, ph[0]);
    for (int k = 1; k <= d; ++k) m = m * e.unitary * signal_phase(e, ph[k]);
    m *= global_phase_compensation(d);
    if (basis == Basis::hadamard) {
        if (e.ancilla_qubits != 1)
            throw domain_error("qet_sequence: hadamard read requires a single ancilla");
        const std::size_t n = e.system_dim();
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        ComplexMatrix had(2, 2);
        had(0, 0) = had(0, 1) = had(1, 0) = inv_sqrt2;
        had(1, 1) = -inv_sqrt2;
        ComplexMatrix hfull = kron(had, ComplexMatrix::identity(n));
        m = hfull * m * hfull;
    }
    enc::BlockEncoding out = e;
    out.unitary = std::move(m);
    return out;
}

enc::BlockEncoding qsvt_sequence(const enc::BlockEncoding& e, const PhaseVector& phases) {
    if (phases.convention != Convention::wx_signal)
        throw domain_error("qsvt_sequence: expects Wx-signal phases");
    const int d = phases.degree();
    std::vector<double> ph = to_reflection(phases.phases);
    ComplexMatrix udag = e.unitary.adjoint();
    ComplexMatrix m = signal_phase(e, ph[0]);
    for (int k = 1; k <= d; ++k) {
        // rightmost factor must be U, alternating leftwards
        const bool use_u = ((d - k) % 2 == 0);
        m = m * (use_u ? e.unitary : udag) * signal_phase(e, ph[k]);
    }
    m *= global_phase_compensation(d);
    enc::BlockEncoding out = e;
    out.unitary = std::move(m);
    return out;
}

// ------------------------------- serialization ------------------------------

std::string to_text(const PhaseVector& p) {
    std::string out = "qsp-phases d=" + std::to_string(p.degree()) + " convention=";
    out += (p.convention == Convention::wx_signal) ? "Wx-signal" : "reflection";
    out += "\n";
    char line[64];
    for (double v : p.phases) {
        std::snprintf(line, sizeof line, "%.17g\n", v);
        out += line;
    }
    return out;
}

PhaseVector phases_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string word, dfield, cfield;
    if (!(in >> word) || word != "qsp-phases")
        throw domain_error("phases_from_text: missing qsp-phases header");
    if (!(in >> dfield >> cfield)) throw domain_error("phases_from_text: malformed header");
    if (dfield.rfind("d=", 0) != 0 || cfield.rfind("convention=", 0) != 0)
        throw domain_error("phases_from_text: malformed header fields");
    int d = std::stoi(dfield.substr(2));
    std::string conv = cfield.substr(11);
    std::vector<double> phases;
    double v;
    while (in >> v) phases.push_back(v);
    if (int(phases.size()) != d + 1)
        throw domain_error("phases_from_text: phase count does not match degree");
    return PhaseVector(std::move(phases), conv == "reflection" ? Convention::reflection
                                                               : Convention::wx_signal);
}

} // namespace qspsim::qsp
