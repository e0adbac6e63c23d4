// qspsim — command-line front end for the fully-coherent QSP Hamiltonian
// simulation experiments. Subcommands map one-to-one onto the drivers in
// qspsim::expt; outputs are CSV/JSON files for external plotting.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qspsim/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::uint64_t seed = 0;
    bool no_cache = false;
    std::string cache_dir = ".qspsim-cache";
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "flat key=value configuration file");
    cmd->add_option("--set", args.overrides, "override: key=value (repeatable)");
    cmd->add_option("--out", args.out_path, "output file path");
    cmd->add_option("--seed", args.seed, "synthesis seed");
    cmd->add_flag("--no-cache", args.no_cache, "bypass the phase cache");
    cmd->add_option("--cache-dir", args.cache_dir, "phase cache directory");
}

qspsim::expt::Config load_config(const CommonArgs& args) {
    qspsim::expt::Config cfg;
    if (!args.config_path.empty()) cfg = qspsim::expt::Config::from_file(args.config_path);
    for (const std::string& kv : args.overrides) {
        std::string::size_type eq = kv.find('=');
        if (eq == std::string::npos)
            throw qspsim::expt::config_error("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

qspsim::expt::PhaseCache cache_of(const CommonArgs& args) {
    qspsim::expt::PhaseCache c;
    c.enabled = !args.no_cache;
    c.directory = args.cache_dir;
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fully-coherent QSP Hamiltonian simulation experiments"};
    app.require_subcommand(1);

    CommonArgs ti, td, h2, cx, ap, ph;
    CLI::App* c_ti = app.add_subcommand("heisenberg-ti",
                                        "two-spin Heisenberg model, constant field");
    attach_common(c_ti, ti);
    CLI::App* c_td = app.add_subcommand("heisenberg-td",
                                        "Trotterized Heisenberg model, linear field ramp");
    attach_common(c_td, td);
    CLI::App* c_h2 = app.add_subcommand("h2", "H2 charge-migration dynamics");
    attach_common(c_h2, h2);
    CLI::App* c_cx = app.add_subcommand("complexity", "query-complexity sweeps");
    attach_common(c_cx, cx);
    CLI::App* c_ap = app.add_subcommand("approx", "polynomial approximation reports");
    attach_common(c_ap, ap);
    CLI::App* c_ph = app.add_subcommand("phases", "synthesize and dump one phase vector");
    attach_common(c_ph, ph);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_ti->parsed()) {
            auto cfg = load_config(ti);
            std::string out = ti.out_path.empty() ? "heisenberg_ti.csv" : ti.out_path;
            qspsim::expt::run_heisenberg_ti(cfg, out, ti.seed, cache_of(ti));
            std::cout << "wrote " << out << "\n";
        } else if (c_td->parsed()) {
            auto cfg = load_config(td);
            std::string out = td.out_path.empty() ? "heisenberg_td.csv" : td.out_path;
            qspsim::expt::run_heisenberg_td(cfg, out, td.seed, cache_of(td));
            std::cout << "wrote " << out << " and " << out << ".summary.json\n";
        } else if (c_h2->parsed()) {
            auto cfg = load_config(h2);
            std::string out = h2.out_path.empty() ? "h2.csv" : h2.out_path;
            qspsim::expt::run_h2(cfg, out, h2.seed, cache_of(h2));
            std::cout << "wrote " << out << "\n";
        } else if (c_cx->parsed()) {
            auto cfg = load_config(cx);
            std::string out = cx.out_path.empty() ? "complexity.csv" : cx.out_path;
            qspsim::expt::run_complexity_sweep(cfg, out);
            std::cout << "wrote " << out << "\n";
        } else if (c_ap->parsed()) {
            auto cfg = load_config(ap);
            std::string out = ap.out_path.empty() ? "approx_report.json" : ap.out_path;
            qspsim::expt::run_approx_report(cfg, out);
            std::cout << "wrote " << out << "\n";
        } else if (c_ph->parsed()) {
            auto cfg = load_config(ph);
            std::string out = ph.out_path.empty() ? "phases.txt" : ph.out_path;
            qspsim::expt::run_phase_dump(cfg, out, ph.seed, cache_of(ph));
            std::cout << "wrote " << out << "\n";
        }
    } catch (const qspsim::expt::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qspsim::expt::synthesis_error& e) {
        std::cerr << "synthesis error: " << e.what() << "\n";
        return 3;
    } catch (const qspsim::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qspsim::numeric_error& e) {
        std::cerr << "numerical contract violation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
