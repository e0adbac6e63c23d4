// experiments.hpp — experiment drivers behind the CLI: configuration
// handling, disk-cached phase synthesis, and the Heisenberg / H2 /
// complexity-sweep / approximation-report runs with CSV and JSON emission.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qspsim/algorithms.hpp"
#include "qspsim/complexity.hpp"
#include "qspsim/polyapprox.hpp"
#include "qspsim/qsp_engine.hpp"

namespace qspsim::expt {

// Raised for malformed configuration (CLI exit code 2).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a driver-required synthesis fails to converge (exit code 3).
struct synthesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key-value configuration with dotted keys, parsed from a text file
// plus --set overrides. Reading a key marks it as recognized; validate()
// rejects provided-but-unused keys.
class Config {
  public:
    static Config from_file(const std::string& path);
    static Config from_text(const std::string& text);
    Config() = default;

    void set(const std::string& key, const std::string& value);  // override

    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    // every explicitly provided key must have been read by the driver
    void check_recognized() const;

    // deterministic snapshot of effective values seen so far (sorted by key)
    std::vector<std::pair<std::string, std::string>> effective() const;

  private:
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, std::string> seen_;
    mutable std::map<std::string, bool> used_;
};

// On-disk phase cache keyed by (target id, degree, basis, tolerance, seed).
struct PhaseCache {
    std::string directory = ".qspsim-cache";
    bool enabled = true;
};

// Cached wrappers around the two synthesis entry points.
qsp::SynthesisResult cached_polynomial_phases(const PhaseCache& cache,
                                              const poly::ChebyshevPolynomial& target,
                                              qsp::Basis basis, double tolerance,
                                              std::uint64_t seed);
qsp::SynthesisResult cached_exponential_phases(const PhaseCache& cache, double tau, double lo,
                                               double hi, int degree, double tolerance,
                                               std::uint64_t seed, int max_restarts,
                                               double modulus_weight);

// ------------------------------ run results ---------------------------------

struct TiRow {
    double t, sz_exact, sz_roaa, sz_os, err_roaa, err_os, p_roaa, p_os;
};

struct TdRow {
    double t;
    double sz_exact, sz_trotter_ideal, sz_roaa, sz_os;
    double err_trotter_ideal, err_roaa, err_os;            // observable errors
    double err_op_trotter_ideal, err_op_roaa, err_op_os;   // operator errors
    double p_roaa, p_os;                                   // per-step
    double p_cum_roaa, p_cum_os;                           // cumulative
};

struct LinearFit {
    double slope = 0.0, intercept = 0.0, r_squared = 0.0, fitted_end = 0.0;
};

struct TdSummary {
    LinearFit op_ideal, op_roaa, op_os;
    double excess_roaa = 0.0, excess_os = 0.0;  // fitted end minus ideal end
    double mean_cumulative_roaa = 0.0, mean_cumulative_os = 0.0;
};

struct H2Row {
    double t_fs, na_exact, na_roaa, na_os, err_roaa, err_os, p_roaa, p_os;
    bool low_confidence_roaa = false, low_confidence_os = false;
};

std::vector<TiRow> run_heisenberg_ti(const Config& cfg, const std::string& out_path,
                                     std::uint64_t seed, const PhaseCache& cache);
std::pair<std::vector<TdRow>, TdSummary> run_heisenberg_td(const Config& cfg,
                                                           const std::string& out_path,
                                                           std::uint64_t seed,
                                                           const PhaseCache& cache);
std::vector<H2Row> run_h2(const Config& cfg, const std::string& out_path, std::uint64_t seed,
                          const PhaseCache& cache);
std::vector<cplx_count::ComplexityReport> run_complexity_sweep(const Config& cfg,
                                                               const std::string& out_path);
std::string run_approx_report(const Config& cfg, const std::string& out_path);

// phases subcommand: synthesize one phase vector per config and serialize it
std::string run_phase_dump(const Config& cfg, const std::string& out_path, std::uint64_t seed,
                           const PhaseCache& cache);

// least-squares fit of y against x with coefficient of determination
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace qspsim::expt
