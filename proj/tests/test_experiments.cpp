#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>

#include "qspsim/experiments.hpp"

using namespace qspsim;
using namespace qspsim::expt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(bool(f));
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const char* tag) {
        path = std::filesystem::temp_directory_path() /
               (std::string("qspsim_test_") + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("config parsing, overrides, and unknown-key rejection") {
    Config cfg = Config::from_text("# comment\nmodel.alpha = 2.5\n time.points=4 \n");
    CHECK(cfg.get_double("model.alpha", 1.0) == 2.5);
    CHECK(cfg.get_int("time.points", 1) == 4);
    CHECK(cfg.get_bool("cache.enabled", true) == true);
    cfg.set("model.alpha", "3.0");
    CHECK(cfg.get_double("model.alpha", 1.0) == 3.0);
    cfg.check_recognized();

    Config bad = Config::from_text("model.mistyped = 1\n");
    CHECK_THROWS_AS(bad.check_recognized(), config_error);
    CHECK_THROWS_AS(Config::from_text("no equals sign\n"), config_error);
    Config nan = Config::from_text("model.alpha = abc\n");
    CHECK_THROWS_AS(nan.get_double("model.alpha", 1.0), config_error);
}

TEST_CASE("linear_fit recovers an exact line") {
    std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    std::vector<double> y = {2.5, 4.5, 6.5, 8.5};
    LinearFit f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(0.5));
    CHECK(f.r_squared == doctest::Approx(1.0));
    CHECK(f.fitted_end == doctest::Approx(8.5));
    CHECK_THROWS_AS(linear_fit({1.0}, {2.0}), domain_error);
}

TEST_CASE("complexity sweep CSV emission") {
    TempDir dir("cx");
    Config cfg = Config::from_text("sweep.t_points = 3\nsweep.epsilon_points = 2\n");
    auto rows = run_complexity_sweep(cfg, dir.file("cx.csv"));
    CHECK(rows.size() == 4 * 5);
    std::string text = slurp(dir.file("cx.csv"));
    CHECK(text.find("algorithm,t,alpha,beta,epsilon,delta,queries") != std::string::npos);
    CHECK(text.find("lcu,") != std::string::npos);
    // effective config echoed as comments
    CHECK(text.find("# sweep.t_points = 3") != std::string::npos);
    // golden working point present: n_lcu(0.02, 5, 5) = 77 at the eps sweep start
    CHECK(text.find("lcu,5,5,0.5,0.0001,") != std::string::npos);
}

TEST_CASE("approx report single targets") {
    TempDir dir("ap");
    Config cfg = Config::from_text("approx.target = sign\napprox.epsilon = 0.01\napprox.delta = 0.5\n");
    std::string text = run_approx_report(cfg, dir.file("r.json"));
    CHECK(text.find("\"epsilon_measured\"") != std::string::npos);
    CHECK(text.find("sign(x)") != std::string::npos);

    Config bad = Config::from_text("approx.target = nonsense\n");
    CHECK_THROWS_AS(run_approx_report(bad, ""), config_error);
}

TEST_CASE("phase dump and cache round trip") {
    TempDir dir("ph");
    PhaseCache cache;
    cache.directory = dir.file("cache");
    Config cfg = Config::from_text("phases.target = cos\nphases.tau = 2.0\nphases.degree = 4\n");
    std::string text1 = run_phase_dump(cfg, dir.file("p.txt"), 7, cache);
    qsp::PhaseVector pv = qsp::phases_from_text(text1);
    CHECK(pv.degree() == 4);
    // warm cache returns the identical serialization
    Config cfg2 = Config::from_text("phases.target = cos\nphases.tau = 2.0\nphases.degree = 4\n");
    std::string text2 = run_phase_dump(cfg2, dir.file("p2.txt"), 7, cache);
    CHECK(text1 == text2);
    CHECK(std::filesystem::exists(cache.directory));
}

TEST_CASE("cached polynomial phases honor the cache directory") {
    TempDir dir("cc");
    PhaseCache cache;
    cache.directory = dir.file("cache");
    poly::ChebyshevPolynomial target = poly::jacobi_anger_cos_degree(1.0, 4);
    auto cold = cached_polynomial_phases(cache, target, qsp::Basis::hadamard, 1e-5, 3);
    CHECK(cold.converged);
    auto warm = cached_polynomial_phases(cache, target, qsp::Basis::hadamard, 1e-5, 3);
    CHECK(warm.converged);
    CHECK(warm.iterations == 0);  // served from disk
    REQUIRE(warm.phases.phases.size() == cold.phases.phases.size());
    for (std::size_t i = 0; i < cold.phases.phases.size(); ++i)
        CHECK(warm.phases.phases[i] == cold.phases.phases[i]);

    PhaseCache off;
    off.enabled = false;
    off.directory = dir.file("cache2");
    auto nocache = cached_polynomial_phases(off, target, qsp::Basis::hadamard, 1e-5, 3);
    CHECK(nocache.converged);
    CHECK_FALSE(std::filesystem::exists(off.directory));
}

TEST_CASE("small heisenberg-ti run is deterministic byte for byte") {
    TempDir dir("ti");
    PhaseCache cache;
    cache.enabled = false;
    const char* conf =
        "time.points = 3\ntime.max = 0.6\ndegrees.cos = 2\ndegrees.sin = 1\ndegrees.eece = 6\n";
    Config a = Config::from_text(conf);
    auto rows = run_heisenberg_ti(a, dir.file("a.csv"), 11, cache);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].t == 0.0);
    CHECK(rows[0].sz_exact == doctest::Approx(1.0));
    CHECK(rows[0].err_roaa < 1e-5);
    CHECK(rows[0].p_roaa > 0.999);
    for (const auto& r : rows) {
        CHECK(r.p_roaa >= 0.0);
        CHECK(r.p_roaa <= 1.0);
        CHECK(r.p_os >= 0.0);
        CHECK(r.p_os <= 1.0);
        CHECK(r.err_roaa >= 0.0);
        CHECK(r.err_os >= 0.0);
    }
    Config b = Config::from_text(conf);
    run_heisenberg_ti(b, dir.file("b.csv"), 11, cache);
    CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
    // different seed may legitimately differ, but must still be a valid run
    Config c = Config::from_text(conf);
    auto rows_c = run_heisenberg_ti(c, dir.file("c.csv"), 99, cache);
    CHECK(rows_c.size() == 3);
}

TEST_CASE("small heisenberg-td run summary wiring") {
    TempDir dir("td");
    PhaseCache cache;
    cache.enabled = false;
    const char* conf =
        "time.steps = 4\ndegrees.cos = 2\ndegrees.sin = 3\ndegrees.eece = 8\n"
        "oracle.substeps_per_unit = 400\n";
    Config a = Config::from_text(conf);
    auto [rows, summary] = run_heisenberg_td(a, dir.file("a.csv"), 5, cache);
    REQUIRE(rows.size() == 5);  // t = 0 row plus 4 steps
    CHECK(rows[0].t == 0.0);
    CHECK(rows[0].sz_exact == 1.0);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].p_cum_roaa <= rows[k - 1].p_cum_roaa + 1e-12);
        CHECK(rows[k].err_op_trotter_ideal >= 0.0);
    }
    CHECK(std::filesystem::exists(dir.file("a.csv") + std::string(".summary.json")));
    std::string j = slurp(dir.file("a.csv") + std::string(".summary.json"));
    CHECK(j.find("mean_cumulative_success") != std::string::npos);

    Config b = Config::from_text(conf);
    run_heisenberg_td(b, dir.file("b.csv"), 5, cache);
    CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
}

TEST_CASE("commuting-field control: trotter baseline is exact") {
    TempDir dir("ctl");
    PhaseCache cache;
    cache.enabled = false;
    // constant field: H(t) commutes with itself, ideal Trotter error ~ 0
    const char* conf =
        "model.h_slope = 0\ntime.steps = 3\ndegrees.cos = 2\ndegrees.sin = 3\n"
        "degrees.eece = 8\noracle.substeps_per_unit = 400\n";
    Config cfg = Config::from_text(conf);
    auto [rows, summary] = run_heisenberg_td(cfg, dir.file("c.csv"), 5, cache);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].err_trotter_ideal <= 1e-8);
        CHECK(rows[k].err_op_trotter_ideal <= 1e-7);
    }
}

TEST_CASE("shipped config files parse and run") {
    TempDir dir("conf");
    PhaseCache cache;
    cache.enabled = false;
    Config cx = Config::from_file("configs/complexity.conf");
    auto rows = run_complexity_sweep(cx, dir.file("cx.csv"));
    CHECK(rows.size() == 4 * (19 + 13));
    // the experiment configs are validated against the drivers on a reduced grid
    Config ti = Config::from_file("configs/heisenberg_ti.conf");
    ti.set("time.points", "1");
    ti.set("degrees.eece", "4");
    CHECK(run_heisenberg_ti(ti, "", 1, cache).size() == 1);
    Config td = Config::from_file("configs/heisenberg_td.conf");
    td.set("time.steps", "1");
    td.set("degrees.eece", "4");
    td.set("oracle.substeps_per_unit", "400");
    CHECK(run_heisenberg_td(td, "", 1, cache).first.size() == 2);
    Config h2 = Config::from_file("configs/h2.conf");
    h2.set("time.points", "1");
    h2.set("degrees.eece", "4");
    h2.set("degrees.cos", "2");
    h2.set("degrees.sin", "1");
    CHECK(run_h2(h2, "", 1, cache).size() == 1);
}

TEST_CASE("config validation failures exit through config_error") {
    PhaseCache cache;
    cache.enabled = false;
    Config odd_cos = Config::from_text("degrees.cos = 3\n");
    CHECK_THROWS_AS(run_heisenberg_ti(odd_cos, "", 1, cache), config_error);
    Config bad_points = Config::from_text("time.points = 0\n");
    CHECK_THROWS_AS(run_heisenberg_ti(bad_points, "", 1, cache), config_error);
    Config typo = Config::from_text("degrees.cso = 2\n");
    CHECK_THROWS_AS(run_heisenberg_ti(typo, "", 1, cache), config_error);
}
