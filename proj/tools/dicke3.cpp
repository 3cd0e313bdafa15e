// dicke3 — collapse/revival and entanglement dynamics of the three-qubit
// Dicke model. Subcommands reproduce the standard figures as CSV data plus a
// run manifest; `verify` runs the full quantitative check suite.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "pipeline.hpp"
#include "run_config.hpp"
#include "verify.hpp"

namespace {

using dicke3::run::RunConfig;

struct CliOptions {
    RunConfig cfg;
    std::string methods_csv{"exact,adiabatic,analytic"};
    std::string initial{"all-excited"};
    bool g_sweep{false};
    std::string g_sweep_values{"0.02,0.04,0.06,0.08"};
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void add_shared_options(CLI::App* cmd, CliOptions& o, double t_max_default,
                        int points_default) {
    o.cfg.t_max = t_max_default;
    o.cfg.points = points_default;
    cmd->add_option("--omega", o.cfg.omega, "qubit splitting in units of omega_c")
        ->capture_default_str();
    cmd->add_option("--g", o.cfg.g, "coupling in units of omega_c")->capture_default_str();
    cmd->add_option("--z", o.cfg.z, "coherent-state amplitude")->capture_default_str();
    cmd->add_option("--n-fock", o.cfg.n_fock,
                    "displaced Fock level for the field (-1 = coherent state)")
        ->capture_default_str();
    cmd->add_option("--t-max", o.cfg.t_max, "time window end, in omega t / 2 pi")
        ->capture_default_str();
    cmd->add_option("--points", o.cfg.points, "number of grid points")->capture_default_str();
    cmd->add_option("--n-tr", o.cfg.n_tr, "Fock truncation (0 = automatic)")
        ->capture_default_str();
    cmd->add_option("--methods", o.methods_csv, "comma list of exact,adiabatic,analytic")
        ->capture_default_str();
    cmd->add_flag("--g-sweep", o.g_sweep, "sweep g over the four panel couplings");
    cmd->add_option("--g-sweep-values", o.g_sweep_values, "comma list used by --g-sweep")
        ->capture_default_str();
    cmd->add_option("--out-dir", o.cfg.out_dir, "output directory")->capture_default_str();
    cmd->add_flag("--json", o.cfg.json_output, "machine-readable reports where applicable");
    cmd->add_flag("--emit-plots", o.cfg.emit_plots, "write gnuplot scripts next to the CSVs");
}

RunConfig finalize(CliOptions& o) {
    o.cfg.methods = split_csv(o.methods_csv);
    if (o.initial == "all-excited")
        o.cfg.initial = dicke3::run::InitialState::AllExcited;
    else if (o.initial == "ghz")
        o.cfg.initial = dicke3::run::InitialState::Ghz;
    else
        throw dicke3::run::config_error("initial must be all-excited or ghz");
    if (o.g_sweep) {
        o.cfg.g_sweep.clear();
        for (const auto& v : split_csv(o.g_sweep_values)) o.cfg.g_sweep.push_back(std::stod(v));
    }
    o.cfg.validate();
    return o.cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-qubit Dicke model: collapse/revival and I-tangle dynamics"};
    app.require_subcommand(1);
    // key = value file with one [section] per subcommand; flags take precedence
    app.set_config("--config", "", "config file with [population]/[spectrum]/[tangle] sections");

    CliOptions pop_o, spec_o, tan_o;
    std::string verify_out = "out";
    bool verify_json = false;

    auto* pop = app.add_subcommand("population", "qubit population P1(t) per method");
    add_shared_options(pop, pop_o, 50.0, 2048);
    pop->add_option("--initial", pop_o.initial, "all-excited | ghz")->capture_default_str();

    auto* spec = app.add_subcommand("spectrum", "Fourier analysis of P1(t)");
    add_shared_options(spec, spec_o, 20.0, 2048);
    spec->add_option("--initial", spec_o.initial, "all-excited | ghz")->capture_default_str();

    auto* tan = app.add_subcommand("tangle", "field-qubit and qubit-pair I-tangles on the GHZ trajectory");
    tan_o.initial = "ghz";
    add_shared_options(tan, tan_o, 30.0, 1024);

    auto* ver = app.add_subcommand("verify", "run the full verification suite");
    ver->add_option("--out-dir", verify_out, "directory for the JSON report")
        ->capture_default_str();
    ver->add_flag("--json", verify_json, "also write verify_report.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (pop->parsed()) return dicke3::run::cmd_population(finalize(pop_o));
        if (spec->parsed()) return dicke3::run::cmd_spectrum(finalize(spec_o));
        if (tan->parsed()) {
            tan_o.initial = "ghz";
            return dicke3::run::cmd_tangle(finalize(tan_o));
        }
        if (ver->parsed()) return dicke3::run::cmd_verify(verify_json, verify_out);
    } catch (const dicke3::run::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
