#include "qspsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace qspsim::expt {

namespace {

constexpr double kFsPerAtomic = 0.02418884254;  // Hartree atomic time unit in fs

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    std::size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    if (path.empty()) return;
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open output file: " + path);
    f << content;
}

std::string config_header(const Config& cfg) {
    std::string out;
    for (const auto& [k, v] : cfg.effective()) out += "# " + k + " = " + v + "\n";
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

// ---------------------------------- Config ----------------------------------

Config Config::from_text(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string::size_type hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::string::size_type eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config line " + std::to_string(line_no) + ": empty key or value");
        c.values_[key] = value;
    }
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_text(buf.str());
}

void Config::set(const std::string& key, const std::string& value) {
    if (key.empty() || value.empty()) throw config_error("--set requires key=value");
    values_[key] = value;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    double out = fallback;
    if (it != values_.end()) {
        used_[key] = true;
        try {
            std::size_t used = 0;
            out = std::stod(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw config_error("config key '" + key + "': bad number '" + it->second + "'");
        }
    }
    seen_[key] = fmt12(out);
    return out;
}

long long Config::get_int(const std::string& key, long long fallback) const {
    auto it = values_.find(key);
    long long out = fallback;
    if (it != values_.end()) {
        used_[key] = true;
        try {
            std::size_t used = 0;
            out = std::stoll(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw config_error("config key '" + key + "': bad integer '" + it->second + "'");
        }
    }
    seen_[key] = std::to_string(out);
    return out;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    bool out = fallback;
    if (it != values_.end()) {
        used_[key] = true;
        if (it->second == "true" || it->second == "1")
            out = true;
        else if (it->second == "false" || it->second == "0")
            out = false;
        else
            throw config_error("config key '" + key + "': bad boolean '" + it->second + "'");
    }
    seen_[key] = out ? "true" : "false";
    return out;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    std::string out = fallback;
    if (it != values_.end()) {
        used_[key] = true;
        out = it->second;
    }
    seen_[key] = out;
    return out;
}

void Config::check_recognized() const {
    for (const auto& [k, v] : values_)
        if (!used_.count(k)) throw config_error("unrecognized config key '" + k + "'");
}

std::vector<std::pair<std::string, std::string>> Config::effective() const {
    return {seen_.begin(), seen_.end()};
}

// -------------------------------- phase cache -------------------------------

namespace {

std::optional<qsp::PhaseVector> cache_lookup(const PhaseCache& cache, std::uint64_t key,
                                             int degree) {
    if (!cache.enabled) return std::nullopt;
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.phases", (unsigned long long)key);
    std::filesystem::path p = std::filesystem::path(cache.directory) / name;
    std::ifstream f(p);
    if (!f) return std::nullopt;
    std::ostringstream buf;
    buf << f.rdbuf();
    try {
        qsp::PhaseVector pv = qsp::phases_from_text(buf.str());
        if (pv.degree() != degree) return std::nullopt;
        return pv;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void cache_store(const PhaseCache& cache, std::uint64_t key, const qsp::PhaseVector& pv) {
    if (!cache.enabled) return;
    std::filesystem::create_directories(cache.directory);
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.phases", (unsigned long long)key);
    std::ofstream f(std::filesystem::path(cache.directory) / name, std::ios::binary);
    if (f) f << qsp::to_text(pv);
}

std::string synthesis_grid_note(double achieved) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", achieved);
    return buf;
}

} // namespace

qsp::SynthesisResult cached_polynomial_phases(const PhaseCache& cache,
                                              const poly::ChebyshevPolynomial& target,
                                              qsp::Basis basis, double tolerance,
                                              std::uint64_t seed) {
    char tail[96];
    std::snprintf(tail, sizeof tail, "|basis=%d|tol=%.17g|seed=%llu",
                  int(basis), tolerance, (unsigned long long)seed);
    std::uint64_t key = fnv1a("poly|" + poly::to_text(target) + tail);
    if (auto hit = cache_lookup(cache, key, target.degree())) {
        qsp::SynthesisResult res;
        res.phases = *hit;
        double worst = 0.0;
        for (int i = 0; i < 201; ++i) {
            double x = -1.0 + 2.0 * i / 200.0;
            worst = std::max(worst,
                             std::abs(qsp::block_value(res.phases, x, basis) - target.eval(x)));
        }
        res.achieved_error = worst;
        res.converged = worst <= tolerance;
        res.iterations = 0;
        return res;
    }
    qsp::SynthesisResult res = qsp::synthesize_phases(target, basis, tolerance, seed);
    if (res.converged) cache_store(cache, key, res.phases);
    return res;
}

qsp::SynthesisResult cached_exponential_phases(const PhaseCache& cache, double tau, double lo,
                                               double hi, int degree, double tolerance,
                                               std::uint64_t seed, int max_restarts,
                                               double modulus_weight) {
    char id[200];
    std::snprintf(id, sizeof id,
                  "expfit|tau=%.17g|lo=%.17g|hi=%.17g|d=%d|tol=%.17g|seed=%llu|r=%d|w=%.17g",
                  tau, lo, hi, degree, tolerance, (unsigned long long)seed, max_restarts,
                  modulus_weight);
    std::uint64_t key = fnv1a(id);
    auto target_fn = [tau](double x) {
        return std::exp(cplx(0.0, -tau * std::abs(x)));  // even extension
    };
    if (auto hit = cache_lookup(cache, key, degree)) {
        qsp::SynthesisResult res;
        res.phases = *hit;
        double worst = 0.0;
        for (int i = 0; i < 201; ++i) {
            double x = lo + (hi - lo) * i / 200.0;
            worst = std::max(worst, std::abs(qsp::block_value(res.phases, x,
                                                              qsp::Basis::computational) -
                                             target_fn(x)));
        }
        res.achieved_error = worst;
        res.converged = worst <= tolerance;
        res.iterations = 0;
        return res;
    }
    qsp::SampleTarget st;
    st.degree = degree;
    st.basis = qsp::Basis::computational;
    const int per_side = std::max(degree, 16);
    st.nodes.reserve(2 * per_side);
    for (int j = 0; j < per_side; ++j) {
        double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(M_PI * (j + 0.5) / per_side);
        st.nodes.push_back(x);
        st.nodes.push_back(-x);
    }
    st.values.reserve(st.nodes.size());
    for (double x : st.nodes) st.values.push_back(target_fn(x));
    st.validation = {{lo, hi}};
    st.validation_target = target_fn;
    st.max_restarts = max_restarts;
    st.modulus_weight = modulus_weight;
    qsp::SynthesisResult res = qsp::synthesize_to_samples(st, tolerance, seed);
    cache_store(cache, key, res.phases);
    return res;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw domain_error("linear_fit: need >= 2 points");
    const double n = double(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0, mean = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double pred = f.slope * x[i] + f.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    f.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    f.fitted_end = f.slope * x.back() + f.intercept;
    return f;
}

// ------------------------------- heisenberg TI ------------------------------

namespace {

struct TrigPhases {
    qsp::PhaseVector cos, sin;
};

// best-effort sample fit of the trigonometric function itself, used when the
// truncation polynomial sits on a stiff spot of the phase landscape
qsp::SynthesisResult trig_function_phases(const PhaseCache& cache, bool cosine, double tau,
                                          int degree, double tol, std::uint64_t seed) {
    char id[128];
    std::snprintf(id, sizeof id, "trigfit|%s|tau=%.17g|d=%d|tol=%.17g|seed=%llu",
                  cosine ? "cos" : "sin", tau, degree, tol, (unsigned long long)seed);
    std::uint64_t key = fnv1a(id);
    auto fn = [cosine, tau](double x) {
        return cplx(cosine ? std::cos(tau * x) : std::sin(tau * x), 0.0);
    };
    if (auto hit = cache_lookup(cache, key, degree)) {
        qsp::SynthesisResult res;
        res.phases = *hit;
        res.converged = true;
        return res;
    }
    qsp::SampleTarget st;
    st.degree = degree;
    st.basis = qsp::Basis::hadamard;
    int n = std::max(degree + 1, 24);
    for (int j = 0; j < n; ++j) {
        double x = std::cos(M_PI * (j + 0.5) / n);
        st.nodes.push_back(x);
        st.values.push_back(fn(x));
    }
    st.validation = {{-1.0, 1.0}};
    st.validation_target = fn;
    qsp::SynthesisResult res = qsp::synthesize_to_samples(st, tol, seed);
    res.converged = true;  // best effort by construction
    cache_store(cache, key, res.phases);
    return res;
}

TrigPhases trig_phases_for(const PhaseCache& cache, double tau, int d_cos, int d_sin, double tol,
                           std::uint64_t seed) {
    poly::ChebyshevPolynomial pc = poly::jacobi_anger_cos_degree(tau, d_cos);
    poly::ChebyshevPolynomial ps = poly::jacobi_anger_sin_degree(tau, d_sin);
    qsp::SynthesisResult rc = cached_polynomial_phases(cache, pc, qsp::Basis::hadamard, tol, seed);
    if (!rc.converged) rc = trig_function_phases(cache, true, tau, d_cos, tol, seed);
    qsp::SynthesisResult rs = cached_polynomial_phases(cache, ps, qsp::Basis::hadamard, tol, seed);
    if (!rs.converged) rs = trig_function_phases(cache, false, tau, d_sin, tol, seed);
    return {rc.phases, rs.phases};
}

} // namespace

std::vector<TiRow> run_heisenberg_ti(const Config& cfg, const std::string& out_path,
                                     std::uint64_t seed, const PhaseCache& cache) {
    const double h = cfg.get_double("model.h", 0.5);
    const enc::BondCoupling g{cfg.get_double("model.gx", 1.0), cfg.get_double("model.gy", 0.0),
                              cfg.get_double("model.gz", 0.0)};
    const double alpha = cfg.get_double("model.alpha", 1.5);
    const double beta = cfg.get_double("model.beta", 0.4);
    const int d_cos = int(cfg.get_int("degrees.cos", 6));
    const int d_sin = int(cfg.get_int("degrees.sin", 5));
    const int d_eece = int(cfg.get_int("degrees.eece", 32));
    const double t_min = cfg.get_double("time.min", 0.0);
    const double t_max = cfg.get_double("time.max", 3.5);
    const int points = int(cfg.get_int("time.points", 36));
    const double tol_trig = cfg.get_double("synth.tolerance_trig", 1e-5);
    const double tol_eece = cfg.get_double("synth.tolerance_eece", 0.05);
    const int restarts = int(cfg.get_int("synth.max_restarts", 4));
    const double w_mod = cfg.get_double("synth.modulus_weight", 0.0);
    const std::size_t site = std::size_t(cfg.get_int("observable.site", 0));
    if (d_cos % 2 != 0 || d_sin % 2 != 1 || d_eece % 2 != 0)
        throw config_error("degree parity: cos even, sin odd, eece even");
    if (points < 1) throw config_error("time.points must be positive");
    cfg.check_recognized();

    enc::PauliSum hs = enc::heisenberg_hamiltonian(2, g, {h, h});
    ComplexMatrix hmat = enc::pauli_sum_to_matrix(hs);
    enc::BlockEncoding dil = enc::dilation_encoding(hmat, alpha);
    Statevector psi0 = Statevector::basis_state(2, 0);  // |00>

    std::vector<TiRow> rows;
    for (int i = 0; i < points; ++i) {
        double t = (points == 1) ? t_min : t_min + (t_max - t_min) * double(i) / double(points - 1);
        TrigPhases trig = trig_phases_for(cache, alpha * t, d_cos, d_sin, tol_trig, seed);
        double tau_os = 2.0 * t * alpha / beta;
        qsp::SynthesisResult eece = cached_exponential_phases(
            cache, tau_os, (1.0 - beta) / 2.0, (1.0 + beta) / 2.0, d_eece, tol_eece, seed,
            restarts, w_mod);
        alg::SimulationOutcome roaa = alg::qsp_lcu_roaa(dil, t, trig.cos, trig.sin, psi0);
        alg::SimulationOutcome os = alg::one_shot(dil, t, beta, eece.phases, psi0);
        ComplexMatrix exact = matrix_exp_hermitian(hmat, t);
        Statevector ex;
        ex.qubit_count = 2;
        ex.amplitudes = apply_matrix(exact, psi0.amplitudes);
        TiRow row;
        row.t = t;
        row.sz_exact = alg::expectation_sigma_z(ex, site);
        row.sz_roaa = alg::expectation_sigma_z(roaa.final_state, site);
        row.sz_os = alg::expectation_sigma_z(os.final_state, site);
        row.err_roaa = std::abs(row.sz_roaa - row.sz_exact);
        row.err_os = std::abs(row.sz_os - row.sz_exact);
        row.p_roaa = roaa.success_probability;
        row.p_os = os.success_probability;
        rows.push_back(row);
    }

    std::string out = config_header(cfg);
    out += "t,sigma_z_exact,sigma_z_roaa,sigma_z_os,err_roaa,err_os,p_roaa,p_os\n";
    for (const auto& r : rows)
        out += fmt12(r.t) + "," + fmt12(r.sz_exact) + "," + fmt12(r.sz_roaa) + "," +
               fmt12(r.sz_os) + "," + fmt12(r.err_roaa) + "," + fmt12(r.err_os) + "," +
               fmt12(r.p_roaa) + "," + fmt12(r.p_os) + "\n";
    write_file(out_path, out);
    return rows;
}

// ------------------------------- heisenberg TD ------------------------------

std::pair<std::vector<TdRow>, TdSummary> run_heisenberg_td(const Config& cfg,
                                                           const std::string& out_path,
                                                           std::uint64_t seed,
                                                           const PhaseCache& cache) {
    const double slope = cfg.get_double("model.h_slope", 1.0 / 15.0);
    const enc::BondCoupling g{cfg.get_double("model.gx", 1.0), cfg.get_double("model.gy", 0.0),
                              cfg.get_double("model.gz", 0.0)};
    const double alpha = cfg.get_double("model.alpha", 2.5);
    const double beta = cfg.get_double("model.beta", 0.25);
    const int d_cos = int(cfg.get_int("degrees.cos", 2));
    const int d_sin = int(cfg.get_int("degrees.sin", 3));
    const int d_eece = int(cfg.get_int("degrees.eece", 14));
    const double dt = cfg.get_double("time.step", 0.5);
    const long long steps = cfg.get_int("time.steps", 24);
    const double tol_trig = cfg.get_double("synth.tolerance_trig", 1e-5);
    const double tol_eece = cfg.get_double("synth.tolerance_eece", 0.05);
    const int restarts = int(cfg.get_int("synth.max_restarts", 4));
    const double w_mod = cfg.get_double("synth.modulus_weight", 10.0);
    const long long substeps_per_unit = cfg.get_int("oracle.substeps_per_unit", 2000);
    const bool postselect_each = cfg.get_bool("trotter.postselect_each_step", false);
    const std::size_t site = std::size_t(cfg.get_int("observable.site", 0));
    if (d_cos % 2 != 0 || d_sin % 2 != 1 || d_eece % 2 != 0)
        throw config_error("degree parity: cos even, sin odd, eece even");
    if (steps < 1) throw config_error("time.steps must be positive");
    cfg.check_recognized();

    alg::TimeDependentSpec spec;
    spec.hamiltonian_at = [slope, g](double t) {
        double h = slope * t;
        return enc::heisenberg_hamiltonian(2, g, {h, h});
    };
    spec.total_time = dt * double(steps);
    spec.steps = steps;

    TrigPhases trig = trig_phases_for(cache, alpha * dt, d_cos, d_sin, tol_trig, seed);
    qsp::SynthesisResult eece =
        cached_exponential_phases(cache, 2.0 * dt * alpha / beta, (1.0 - beta) / 2.0,
                                  (1.0 + beta) / 2.0, d_eece, tol_eece, seed, restarts, w_mod);

    Statevector psi0 = Statevector::basis_state(2, 0);
    alg::TrotterConfig roaa_cfg;
    roaa_cfg.algorithm = alg::TrotterAlgorithm::roaa;
    roaa_cfg.alpha = alpha;
    roaa_cfg.phases_cos = trig.cos;
    roaa_cfg.phases_sin = trig.sin;
    roaa_cfg.phases_eece = eece.phases;  // unused
    roaa_cfg.postselect_each_step = postselect_each;
    alg::TrotterConfig os_cfg = roaa_cfg;
    os_cfg.algorithm = alg::TrotterAlgorithm::one_shot;
    os_cfg.beta = beta;

    std::vector<alg::TrotterStep> chain_roaa = alg::trotter_evolve(spec, roaa_cfg, psi0);
    std::vector<alg::TrotterStep> chain_os = alg::trotter_evolve(spec, os_cfg, psi0);

    // ideal-Trotter and exact references, plus cumulative realized operators
    std::vector<TdRow> rows;
    ComplexMatrix u_ideal = ComplexMatrix::identity(4);
    ComplexMatrix m_roaa = ComplexMatrix::identity(4);
    ComplexMatrix m_os = ComplexMatrix::identity(4);
    TdRow zero{};
    zero.sz_exact = zero.sz_trotter_ideal = zero.sz_roaa = zero.sz_os = 1.0;
    zero.p_roaa = zero.p_os = zero.p_cum_roaa = zero.p_cum_os = 1.0;
    rows.push_back(zero);
    for (long long k = 0; k < steps; ++k) {
        double tk = double(k) * dt;
        ComplexMatrix hk = enc::pauli_sum_to_matrix(spec.hamiltonian_at(tk));
        u_ideal = matrix_exp_hermitian(hk, dt) * u_ideal;
        m_roaa = chain_roaa[k].outcome.block_operator * m_roaa;
        m_os = chain_os[k].outcome.block_operator * m_os;
        double t_end = double(k + 1) * dt;
        alg::TimeDependentSpec partial = spec;
        partial.total_time = t_end;
        long long base = std::max<long long>(16, (long long)std::ceil(substeps_per_unit * t_end));
        ComplexMatrix u_exact = alg::exact_evolution_td(partial, base);
        Statevector ex;
        ex.qubit_count = 2;
        ex.amplitudes = apply_matrix(u_exact, psi0.amplitudes);
        Statevector id_state;
        id_state.qubit_count = 2;
        id_state.amplitudes = apply_matrix(u_ideal, psi0.amplitudes);
        TdRow row{};
        row.t = t_end;
        row.sz_exact = alg::expectation_sigma_z(ex, site);
        row.sz_trotter_ideal = alg::expectation_sigma_z(id_state, site);
        row.sz_roaa = alg::expectation_sigma_z(chain_roaa[k].cumulative_state, site);
        row.sz_os = alg::expectation_sigma_z(chain_os[k].cumulative_state, site);
        row.err_trotter_ideal = std::abs(row.sz_trotter_ideal - row.sz_exact);
        row.err_roaa = std::abs(row.sz_roaa - row.sz_exact);
        row.err_os = std::abs(row.sz_os - row.sz_exact);
        row.err_op_trotter_ideal = spectral_norm(u_ideal - u_exact);
        row.err_op_roaa = spectral_norm(m_roaa - u_exact);
        row.err_op_os = alg::phase_aligned_distance(m_os, u_exact).first;
        row.p_roaa = chain_roaa[k].outcome.success_probability;
        row.p_os = chain_os[k].outcome.success_probability;
        row.p_cum_roaa = chain_roaa[k].cumulative_success;
        row.p_cum_os = chain_os[k].cumulative_success;
        rows.push_back(row);
    }

    std::vector<double> ts, e_id, e_ro, e_os, cum_ro, cum_os;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ts.push_back(rows[i].t);
        e_id.push_back(rows[i].err_op_trotter_ideal);
        e_ro.push_back(rows[i].err_op_roaa);
        e_os.push_back(rows[i].err_op_os);
        cum_ro.push_back(rows[i].p_cum_roaa);
        cum_os.push_back(rows[i].p_cum_os);
    }
    auto fit_or_point = [](const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() >= 2) return linear_fit(x, y);
        LinearFit f;
        f.intercept = y.front();
        f.r_squared = 1.0;
        f.fitted_end = y.front();
        return f;
    };
    TdSummary summary;
    summary.op_ideal = fit_or_point(ts, e_id);
    summary.op_roaa = fit_or_point(ts, e_ro);
    summary.op_os = fit_or_point(ts, e_os);
    summary.excess_roaa = summary.op_roaa.fitted_end - summary.op_ideal.fitted_end;
    summary.excess_os = summary.op_os.fitted_end - summary.op_ideal.fitted_end;
    summary.mean_cumulative_roaa =
        std::accumulate(cum_ro.begin(), cum_ro.end(), 0.0) / double(cum_ro.size());
    summary.mean_cumulative_os =
        std::accumulate(cum_os.begin(), cum_os.end(), 0.0) / double(cum_os.size());

    std::string out = config_header(cfg);
    out += "t,sigma_z_exact,sigma_z_trotter_ideal,sigma_z_roaa,sigma_z_os,err_trotter_ideal,"
           "err_roaa,err_os,err_op_trotter_ideal,err_op_roaa,err_op_os,p_roaa,p_os,p_cum_roaa,"
           "p_cum_os\n";
    for (const auto& r : rows)
        out += fmt12(r.t) + "," + fmt12(r.sz_exact) + "," + fmt12(r.sz_trotter_ideal) + "," +
               fmt12(r.sz_roaa) + "," + fmt12(r.sz_os) + "," + fmt12(r.err_trotter_ideal) + "," +
               fmt12(r.err_roaa) + "," + fmt12(r.err_os) + "," + fmt12(r.err_op_trotter_ideal) +
               "," + fmt12(r.err_op_roaa) + "," + fmt12(r.err_op_os) + "," + fmt12(r.p_roaa) +
               "," + fmt12(r.p_os) + "," + fmt12(r.p_cum_roaa) + "," + fmt12(r.p_cum_os) + "\n";
    write_file(out_path, out);

    if (!out_path.empty()) {
        nlohmann::json j;
        auto put = [](const LinearFit& f) {
            return nlohmann::json{{"slope", f.slope},
                                  {"intercept", f.intercept},
                                  {"r_squared", f.r_squared},
                                  {"fitted_end", f.fitted_end}};
        };
        j["operator_error_fit"] = {{"trotter_ideal", put(summary.op_ideal)},
                                   {"roaa", put(summary.op_roaa)},
                                   {"one_shot", put(summary.op_os)}};
        j["excess_over_ideal"] = {{"roaa", summary.excess_roaa}, {"one_shot", summary.excess_os}};
        j["mean_cumulative_success"] = {{"roaa", summary.mean_cumulative_roaa},
                                        {"one_shot", summary.mean_cumulative_os}};
        write_file(out_path + ".summary.json", j.dump(2) + "\n");
    }
    return {rows, summary};
}

// ------------------------------------ H2 ------------------------------------

std::vector<H2Row> run_h2(const Config& cfg, const std::string& out_path, std::uint64_t seed,
                          const PhaseCache& cache) {
    const std::string pauli_file = cfg.get_string("h2.pauli_file", "data/h2_sto3g_r0.5.pauli");
    // alpha multiplies the spectral norm; the default 1 dilates at exactly ||H||
    const double alpha_factor = cfg.get_double("model.alpha", 1.0);
    const double beta = cfg.get_double("model.beta", 0.5);
    const int d_cos = int(cfg.get_int("degrees.cos", 6));
    const int d_sin = int(cfg.get_int("degrees.sin", 5));
    const int d_eece = int(cfg.get_int("degrees.eece", 32));
    const double t_max_fs = cfg.get_double("time.max_fs", 0.15);
    const int points = int(cfg.get_int("time.points", 31));
    const double tol_trig = cfg.get_double("synth.tolerance_trig", 1e-5);
    const double tol_eece = cfg.get_double("synth.tolerance_eece", 0.05);
    const int restarts = int(cfg.get_int("synth.max_restarts", 4));
    const double w_mod = cfg.get_double("synth.modulus_weight", 0.0);
    const double low_conf = cfg.get_double("report.low_confidence_threshold", 0.85);
    const std::size_t orb_a = std::size_t(cfg.get_int("h2.orbital_a", 0));
    const std::size_t orb_b = std::size_t(cfg.get_int("h2.orbital_b", 2));
    const long long init_index = cfg.get_int("h2.initial_state", 0b0101);
    if (d_cos % 2 != 0 || d_sin % 2 != 1 || d_eece % 2 != 0)
        throw config_error("degree parity: cos even, sin odd, eece even");
    cfg.check_recognized();

    enc::PauliSum ps = enc::load_pauli_sum(pauli_file);
    ComplexMatrix hmat = enc::pauli_sum_to_matrix(ps);
    const double norm = spectral_norm(hmat);
    const double alpha = alpha_factor * norm;
    enc::BlockEncoding dil = enc::dilation_encoding(hmat, alpha);
    Statevector psi0 = Statevector::basis_state(ps.qubit_count, std::size_t(init_index));

    std::vector<H2Row> rows;
    for (int i = 0; i < points; ++i) {
        double t_fs = (points == 1) ? 0.0 : t_max_fs * double(i) / double(points - 1);
        double t = t_fs / kFsPerAtomic;
        TrigPhases trig = trig_phases_for(cache, alpha * t, d_cos, d_sin, tol_trig, seed);
        qsp::SynthesisResult eece = cached_exponential_phases(
            cache, 2.0 * t * alpha / beta, (1.0 - beta) / 2.0, (1.0 + beta) / 2.0, d_eece,
            tol_eece, seed, restarts, w_mod);
        alg::SimulationOutcome roaa = alg::qsp_lcu_roaa(dil, t, trig.cos, trig.sin, psi0);
        alg::SimulationOutcome os = alg::one_shot(dil, t, beta, eece.phases, psi0);
        ComplexMatrix exact = matrix_exp_hermitian(hmat, t);
        Statevector ex;
        ex.qubit_count = ps.qubit_count;
        ex.amplitudes = apply_matrix(exact, psi0.amplitudes);
        H2Row row;
        row.t_fs = t_fs;
        row.na_exact = alg::occupation_number(ex, orb_a, orb_b);
        row.na_roaa = alg::occupation_number(roaa.final_state, orb_a, orb_b);
        row.na_os = alg::occupation_number(os.final_state, orb_a, orb_b);
        row.err_roaa = std::abs(row.na_roaa - row.na_exact);
        row.err_os = std::abs(row.na_os - row.na_exact);
        row.p_roaa = roaa.success_probability;
        row.p_os = os.success_probability;
        row.low_confidence_roaa = row.p_roaa < low_conf;
        row.low_confidence_os = row.p_os < low_conf;
        rows.push_back(row);
    }

    std::string out = config_header(cfg);
    out += "t_fs,nA_exact,nA_roaa,nA_os,err_roaa,err_os,p_roaa,p_os,low_confidence_roaa,"
           "low_confidence_os\n";
    for (const auto& r : rows)
        out += fmt12(r.t_fs) + "," + fmt12(r.na_exact) + "," + fmt12(r.na_roaa) + "," +
               fmt12(r.na_os) + "," + fmt12(r.err_roaa) + "," + fmt12(r.err_os) + "," +
               fmt12(r.p_roaa) + "," + fmt12(r.p_os) + "," +
               (r.low_confidence_roaa ? "1" : "0") + "," + (r.low_confidence_os ? "1" : "0") +
               "\n";
    write_file(out_path, out);
    return rows;
}

// ------------------------------ complexity sweep ----------------------------

std::vector<cplx_count::ComplexityReport> run_complexity_sweep(const Config& cfg,
                                                               const std::string& out_path) {
    cplx_count::SweepSpec spec;
    spec.alpha = cfg.get_double("model.alpha", 5.0);
    spec.beta = cfg.get_double("model.beta", 0.5);
    spec.epsilon_fixed = cfg.get_double("sweep.epsilon_fixed", 0.02);
    spec.t_fixed = cfg.get_double("sweep.t_fixed", 5.0);
    const double t_min = cfg.get_double("sweep.t_min", 1.0);
    const double t_max = cfg.get_double("sweep.t_max", 10.0);
    const int t_points = int(cfg.get_int("sweep.t_points", 19));
    const double e_min = cfg.get_double("sweep.epsilon_min", 1e-4);
    const double e_max = cfg.get_double("sweep.epsilon_max", 1e-1);
    const int e_points = int(cfg.get_int("sweep.epsilon_points", 13));
    cfg.check_recognized();
    if (t_points < 1 || e_points < 1) throw config_error("sweep point counts must be positive");
    for (int i = 0; i < t_points; ++i)
        spec.t_values.push_back(t_points == 1 ? t_min
                                              : t_min + (t_max - t_min) * i / double(t_points - 1));
    for (int i = 0; i < e_points; ++i) {
        double f = (e_points == 1) ? 0.0 : double(i) / double(e_points - 1);
        spec.epsilon_values.push_back(e_min * std::pow(e_max / e_min, f));
    }
    std::vector<cplx_count::ComplexityReport> rows = cplx_count::complexity_table(spec);
    std::string out = config_header(cfg);
    out += "algorithm,t,alpha,beta,epsilon,delta,queries\n";
    for (const auto& r : rows)
        out += r.algorithm + "," + fmt12(r.t) + "," + fmt12(r.alpha) + "," + fmt12(r.beta) + "," +
               fmt12(r.epsilon) + "," + fmt12(r.delta) + "," + std::to_string(r.queries) + "\n";
    write_file(out_path, out);
    return rows;
}

// ------------------------------- approx report ------------------------------

namespace {

nlohmann::json report_json(const poly::ApproximationReport& r,
                           const std::vector<poly::Interval>& ivs) {
    nlohmann::json j;
    j["target"] = r.target_name;
    j["epsilon_requested"] = r.epsilon_requested;
    j["epsilon_measured"] = r.epsilon_measured;
    j["degree"] = r.degree;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& iv : ivs) arr.push_back({iv.lo, iv.hi});
    j["intervals"] = arr;
    return j;
}

} // namespace

std::string run_approx_report(const Config& cfg, const std::string& out_path) {
    const std::string target = cfg.get_string("approx.target", "suite");
    const int grid = int(cfg.get_int("approx.grid_points", 1001));
    nlohmann::json out = nlohmann::json::array();
    auto add_cos_sin = [&](double tau, double eps) {
        poly::ChebyshevPolynomial pc = poly::jacobi_anger_cos(tau, eps);
        poly::ChebyshevPolynomial psn = poly::jacobi_anger_sin(tau, eps);
        std::vector<poly::Interval> full = {{-1.0, 1.0}};
        out.push_back(report_json(
            poly::measure_error(pc, poly::TargetFunction::cosine(tau), full, grid, 2.0 * eps),
            full));
        out.push_back(report_json(
            poly::measure_error(psn, poly::TargetFunction::sine(tau), full, grid, 2.0 * eps),
            full));
    };
    auto add_sign = [&](double eps, double delta) {
        poly::ChebyshevPolynomial pg = poly::sign_poly(eps, delta);
        std::vector<poly::Interval> ivs = {{-1.0, -delta / 2.0}, {delta / 2.0, 1.0}};
        out.push_back(report_json(
            poly::measure_error(pg, poly::TargetFunction::sign(), ivs, grid, eps), ivs));
    };
    auto add_eece = [&](double eps, double delta, double tau) {
        poly::ChebyshevPolynomial pe = poly::eece_poly(eps, delta, tau);
        std::vector<poly::Interval> ivs = {{delta / 2.0, 1.0}};
        out.push_back(report_json(
            poly::measure_error(pe, poly::TargetFunction::eece(tau), ivs, grid, eps), ivs));
    };
    if (target == "suite") {
        cfg.check_recognized();
        for (double tau : {1.0, 5.25, 26.25})
            for (double eps : {1e-2, 1e-3, 1e-4}) add_cos_sin(tau, eps);
        for (double eps : {1e-2, 1e-3})
            for (double delta : {0.3, 0.6, 0.98}) add_sign(eps, delta);
        add_eece(0.05, 0.6, 26.25);
    } else if (target == "cos" || target == "sin") {
        double tau = cfg.get_double("approx.tau", 5.25);
        double eps = cfg.get_double("approx.epsilon", 1e-3);
        cfg.check_recognized();
        add_cos_sin(tau, eps);
    } else if (target == "sign") {
        double eps = cfg.get_double("approx.epsilon", 1e-2);
        double delta = cfg.get_double("approx.delta", 0.5);
        cfg.check_recognized();
        add_sign(eps, delta);
    } else if (target == "eece") {
        double tau = cfg.get_double("approx.tau", 26.25);
        double eps = cfg.get_double("approx.epsilon", 0.05);
        double delta = cfg.get_double("approx.delta", 0.6);
        cfg.check_recognized();
        add_eece(eps, delta, tau);
    } else {
        throw config_error("approx.target must be suite|cos|sin|sign|eece");
    }
    std::string text = out.dump(2) + "\n";
    write_file(out_path, text);
    return text;
}

// -------------------------------- phase dump --------------------------------

std::string run_phase_dump(const Config& cfg, const std::string& out_path, std::uint64_t seed,
                           const PhaseCache& cache) {
    const std::string target = cfg.get_string("phases.target", "cos");
    const double tol = cfg.get_double("phases.tolerance", 1e-6);
    qsp::SynthesisResult res;
    if (target == "cos" || target == "sin") {
        double tau = cfg.get_double("phases.tau", 5.25);
        int degree = int(cfg.get_int("phases.degree", target == "cos" ? 6 : 5));
        cfg.check_recognized();
        poly::ChebyshevPolynomial p = (target == "cos")
                                          ? poly::jacobi_anger_cos_degree(tau, degree)
                                          : poly::jacobi_anger_sin_degree(tau, degree);
        res = cached_polynomial_phases(cache, p, qsp::Basis::hadamard, tol, seed);
    } else if (target == "sign") {
        double eps = cfg.get_double("phases.epsilon", 1e-2);
        double delta = cfg.get_double("phases.delta", 0.5);
        cfg.check_recognized();
        poly::ChebyshevPolynomial p = poly::sign_poly(eps, delta);
        res = cached_polynomial_phases(cache, p, qsp::Basis::computational, tol, seed);
    } else if (target == "eece") {
        double tau = cfg.get_double("phases.tau", 26.25);
        double lo = cfg.get_double("phases.interval_lo", 0.3);
        double hi = cfg.get_double("phases.interval_hi", 0.7);
        int degree = int(cfg.get_int("phases.degree", 32));
        int restarts = int(cfg.get_int("synth.max_restarts", 4));
        double w_mod = cfg.get_double("synth.modulus_weight", 0.0);
        cfg.check_recognized();
        res = cached_exponential_phases(cache, tau, lo, hi, degree, tol, seed, restarts, w_mod);
    } else {
        throw config_error("phases.target must be cos|sin|sign|eece");
    }
    if (!res.converged)
        throw synthesis_error("phase synthesis did not converge (achieved " +
                              synthesis_grid_note(res.achieved_error) + ")");
    std::string text = qsp::to_text(res.phases);
    write_file(out_path, text);
    return text;
}

} // namespace qspsim::expt
